#include <algorithm>

#include "pdmodel/cdga.hpp"
#include "pdmodel/errors.hpp"

namespace pdmodel {

std::vector<Violation> check_ideal(const Cdga& a, const GradedSubspace& ideal) {
  std::vector<Violation> out;
  auto add = [&](const char* axiom, std::vector<BasisRef> w, const char* detail) {
    for (auto& v : out)
      if (v.axiom == axiom) {
        ++v.count;
        return;
      }
    out.push_back(Violation{axiom, std::move(w), 1, detail});
  };
  if (ideal.size() != static_cast<std::size_t>(a.top() + 1)) {
    add("shape", {}, "ideal family has the wrong number of degrees");
    return out;
  }
  for (int i = 0; i <= a.top(); ++i) {
    const Subspace& s = ideal[static_cast<std::size_t>(i)];
    if (s.ambient() != a.dim(i)) add("shape", {BasisRef{i, 0}}, "ideal member has the wrong ambient dimension");
  }
  if (!out.empty()) return out;
  for (int i = 0; i <= a.top(); ++i) {
    const Subspace& s = ideal[static_cast<std::size_t>(i)];
    for (std::size_t r = 0; r < s.dim(); ++r) {
      Element v{i, s.vector(r)};
      if (i < a.top() && !ideal[static_cast<std::size_t>(i + 1)].contains(a.apply_d(v).coords))
        add("not d-stable", {BasisRef{i, r}}, "d maps an ideal element outside the ideal");
      for (int j = 1; i + j <= a.top(); ++j)
        for (std::size_t y = 0; y < a.dim(j); ++y)
          if (!ideal[static_cast<std::size_t>(i + j)].contains(a.mul(v, a.basis_element(j, y)).coords))
            add("not an ideal", {BasisRef{i, r}, BasisRef{j, y}}, "product with an ideal element leaves the ideal");
    }
  }
  return out;
}

Quotient quotient_by_ideal(const CdgaPtr& ap, const GradedSubspace& ideal) {
  const Cdga& a = *ap;
  auto bad = check_ideal(a, ideal);
  if (!bad.empty()) throw ContractError(describe(bad.front()));
  const Field& f = a.field();
  const int top = a.top();

  Quotient q;
  q.kept.resize(static_cast<std::size_t>(top + 1));
  std::vector<std::vector<long>> slot(static_cast<std::size_t>(top + 1));
  for (int i = 0; i <= top; ++i) {
    const auto& piv = ideal[static_cast<std::size_t>(i)].pivots();
    auto& s = slot[static_cast<std::size_t>(i)];
    s.assign(a.dim(i), -1);
    for (std::size_t c = 0; c < a.dim(i); ++c)
      if (std::find(piv.begin(), piv.end(), c) == piv.end()) {
        s[c] = static_cast<long>(q.kept[static_cast<std::size_t>(i)].size());
        q.kept[static_cast<std::size_t>(i)].push_back(c);
      }
  }
  if (q.kept[0].size() != 1) throw ContractError("quotient_by_ideal: the ideal contains the unit");

  // projection: reduce modulo the ideal's echelon basis, then read the non-pivot coordinates
  std::vector<Matrix> proj;
  for (int i = 0; i <= top; ++i) {
    const auto& kept = q.kept[static_cast<std::size_t>(i)];
    Matrix m(kept.size(), a.dim(i), f);
    for (std::size_t c = 0; c < a.dim(i); ++c) {
      Vector r = ideal[static_cast<std::size_t>(i)].reduce(unit_vector(a.dim(i), c, f));
      for (std::size_t k = 0; k < kept.size(); ++k) m(k, c) = r[kept[k]];
    }
    proj.push_back(std::move(m));
  }

  CdgaBuilder b(f, top);
  for (int i = 1; i <= top; ++i) {
    std::vector<std::string> names;
    for (std::size_t c : q.kept[static_cast<std::size_t>(i)]) names.push_back(a.names(i)[c]);
    b.set_basis(i, std::move(names));
  }
  for (int i = 0; i < top; ++i) {
    const auto& kept = q.kept[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < kept.size(); ++k)
      b.set_d(i, k, proj[static_cast<std::size_t>(i + 1)].apply(a.d(i).column(kept[k])));
  }
  for (int i = 1; i <= top; ++i)
    for (int j = i; i + j <= top; ++j) {
      const auto& ki = q.kept[static_cast<std::size_t>(i)];
      const auto& kj = q.kept[static_cast<std::size_t>(j)];
      for (std::size_t x = 0; x < ki.size(); ++x)
        for (std::size_t y = (i == j ? x : 0); y < kj.size(); ++y) {
          Element p = a.mul(a.basis_element(i, ki[x]), a.basis_element(j, kj[y]));
          b.set_product(i, x, j, y, proj[static_cast<std::size_t>(i + j)].apply(p.coords));
        }
    }
  q.algebra = b.build_shared();
  q.projection = ChainAlgebraMap{ap, q.algebra, std::move(proj)};
  return q;
}

}  // namespace pdmodel

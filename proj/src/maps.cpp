#include <algorithm>

#include "pdmodel/cdga.hpp"
#include "pdmodel/errors.hpp"

namespace pdmodel {

Element ChainAlgebraMap::apply(const Element& x) const {
  if (x.degree < 0 || x.degree > top()) return target->zero(x.degree);
  return Element{x.degree, mats[static_cast<std::size_t>(x.degree)].apply(x.coords)};
}

ChainAlgebraMap identity_map(const CdgaPtr& a) {
  ChainAlgebraMap f{a, a, {}};
  for (int i = 0; i <= a->top(); ++i) f.mats.push_back(Matrix::identity(a->dim(i), a->field()));
  return f;
}

ChainAlgebraMap compose(const ChainAlgebraMap& outer, const ChainAlgebraMap& inner) {
  if (inner.target != outer.source && !(*inner.target == *outer.source))
    throw ContractError("compose: endpoints do not match");
  ChainAlgebraMap f{inner.source, outer.target, {}};
  int top = std::min(outer.top(), inner.top());
  for (int i = 0; i <= top; ++i)
    f.mats.push_back(outer.mats[static_cast<std::size_t>(i)] * inner.mats[static_cast<std::size_t>(i)]);
  return f;
}

std::vector<Violation> check_map(const ChainAlgebraMap& f) {
  std::vector<Violation> out;
  auto add = [&](const char* axiom, std::vector<BasisRef> w, const char* detail) {
    for (auto& v : out)
      if (v.axiom == axiom) {
        ++v.count;
        return;
      }
    out.push_back(Violation{axiom, std::move(w), 1, detail});
  };
  const Cdga& s = *f.source;
  const Cdga& t = *f.target;
  int top = std::min(s.top(), t.top());
  if (f.top() < top) {
    add("shape", {}, "map has fewer degrees than source and target share");
    return out;
  }
  for (int i = 0; i <= top; ++i) {
    const Matrix& m = f.mats[static_cast<std::size_t>(i)];
    if (m.rows() != t.dim(i) || m.cols() != s.dim(i)) add("shape", {BasisRef{i, 0}}, "matrix shape mismatch");
  }
  if (!out.empty()) return out;

  if (f.apply(s.unit()) != t.unit()) add("unit", {BasisRef{0, 0}}, "F(1) != 1");
  for (int i = 0; i < top; ++i)
    for (std::size_t x = 0; x < s.dim(i); ++x) {
      Element e = s.basis_element(i, x);
      if (f.apply(s.apply_d(e)) != t.apply_d(f.apply(e))) add("chain", {BasisRef{i, x}}, "F(dx) != dF(x)");
    }
  for (int i = 1; i <= top; ++i)
    for (int j = i; i + j <= top; ++j)
      for (std::size_t x = 0; x < s.dim(i); ++x)
        for (std::size_t y = 0; y < s.dim(j); ++y) {
          Element a = s.basis_element(i, x), b = s.basis_element(j, y);
          if (f.apply(s.mul(a, b)) != t.mul(f.apply(a), f.apply(b)))
            add("multiplicative", {BasisRef{i, x}, BasisRef{j, y}}, "F(ab) != F(a)F(b)");
        }
  return out;
}

}  // namespace pdmodel

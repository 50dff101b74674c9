#include <algorithm>

#include "pdmodel/cdga.hpp"
#include "pdmodel/errors.hpp"

namespace pdmodel {

namespace {

std::string power_name(const std::string& gen, int m) { return m == 1 ? gen : gen + "^" + std::to_string(m); }

// Old basis vectors keep their indices: the power-0 block comes first in every degree.
Element pad(const Element& x, const Cdga& into) {
  Element out = into.zero(x.degree);
  std::copy(x.coords.begin(), x.coords.end(), out.coords.begin());
  return out;
}

struct Layout {
  // offset[D][m]: index of (power m, old index 0) in degree D; -1 when absent
  std::vector<std::vector<long>> offset;
  std::vector<std::size_t> dims;
};

Layout layout_for(const Cdga& old, int gen_degree) {
  Layout l;
  int top = old.top();
  bool odd = gen_degree % 2 != 0;
  for (int deg = 0; deg <= top; ++deg) {
    std::vector<long> off;
    std::size_t n = 0;
    for (int m = 0; deg - m * gen_degree >= 0 && (!odd || m <= 1); ++m) {
      off.push_back(static_cast<long>(n));
      n += old.dim(deg - m * gen_degree);
    }
    l.offset.push_back(std::move(off));
    l.dims.push_back(n);
  }
  return l;
}

// Adjoins one generator of degree e >= 1 with differential dg (an element of `old`).
Extension adjoin(const Extension& cur, const std::string& name, int e, const Element& dg) {
  const Cdga& old = *cur.algebra;
  const Field& f = old.field();
  const int top = old.top();
  const bool odd = e % 2 != 0;
  Layout lay = layout_for(old, e);

  CdgaBuilder b(f, top);
  for (int deg = 1; deg <= top; ++deg) {
    std::vector<std::string> names;
    for (std::size_t m = 0; m < lay.offset[static_cast<std::size_t>(deg)].size(); ++m) {
      int base_deg = deg - static_cast<int>(m) * e;
      for (const auto& nm : old.names(base_deg)) {
        if (m == 0)
          names.push_back(nm);
        else if (base_deg == 0)
          names.push_back(power_name(name, static_cast<int>(m)));
        else
          names.push_back(nm + "*" + power_name(name, static_cast<int>(m)));
      }
    }
    b.set_basis(deg, std::move(names));
  }

  auto index_of = [&](int deg, int m, std::size_t old_idx) -> std::size_t {
    return static_cast<std::size_t>(lay.offset[static_cast<std::size_t>(deg)][static_cast<std::size_t>(m)]) + old_idx;
  };
  auto has_power = [&](int deg, int m) {
    return deg <= top && static_cast<std::size_t>(m) < lay.offset[static_cast<std::size_t>(deg)].size();
  };

  // differential: d(a g^m) = (da) g^m + (-1)^|a| m a (dg) g^{m-1}
  for (int deg = 0; deg < top; ++deg) {
    Matrix dm(lay.dims[static_cast<std::size_t>(deg + 1)], lay.dims[static_cast<std::size_t>(deg)], f);
    for (std::size_t m = 0; m < lay.offset[static_cast<std::size_t>(deg)].size(); ++m) {
      int mi = static_cast<int>(m);
      int base_deg = deg - mi * e;
      for (std::size_t x = 0; x < old.dim(base_deg); ++x) {
        std::size_t col = index_of(deg, mi, x);
        if (has_power(deg + 1, mi)) {
          const Matrix& od = old.d(base_deg);
          for (std::size_t r = 0; r < od.rows(); ++r)
            if (!od(r, x).is_zero()) dm(index_of(deg + 1, mi, r), col) += od(r, x);
        }
        if (mi >= 1 && base_deg + e + 1 <= top) {
          Element adg = old.mul(old.basis_element(base_deg, x), dg);
          Scalar coef = Scalar::from_int(static_cast<long>(koszul_sign(base_deg)) * mi, f);
          if (coef.is_zero()) continue;
          for (std::size_t r = 0; r < adg.coords.size(); ++r)
            if (!adg.coords[r].is_zero()) dm(index_of(deg + 1, mi - 1, r), col) += coef * adg.coords[r];
        }
      }
    }
    b.set_d_matrix(deg, std::move(dm));
  }

  // products: (a g^p)(b g^q) = (-1)^{e p |b|} (ab) g^{p+q}
  for (int i = 1; i <= top; ++i)
    for (int j = i; i + j <= top; ++j)
      for (std::size_t p = 0; p < lay.offset[static_cast<std::size_t>(i)].size(); ++p)
        for (std::size_t q = 0; q < lay.offset[static_cast<std::size_t>(j)].size(); ++q) {
          int pi = static_cast<int>(p), qi = static_cast<int>(q);
          int ai = i - pi * e, bj = j - qi * e;
          bool vanishes = (odd && pi + qi >= 2) || !has_power(i + j, pi + qi);
          int sign = koszul_sign(static_cast<long>(e) * pi * bj);
          for (std::size_t x = 0; x < old.dim(ai); ++x)
            for (std::size_t y = 0; y < old.dim(bj); ++y) {
              if (i == j && index_of(j, qi, y) < index_of(i, pi, x)) continue;
              SparseVec v;
              if (!vanishes)
                for (const auto& [k, c] : old.basis_product(ai, x, bj, y))
                  v.emplace_back(index_of(i + j, pi + qi, k), sign == 1 ? c : -c);
              b.set_product(i, index_of(i, pi, x), j, index_of(j, qi, y), v);
            }
        }

  Extension next;
  next.algebra = b.build_shared();
  // the previous inclusion composed with the padding embedding
  next.inclusion = ChainAlgebraMap{cur.inclusion.source, next.algebra, {}};
  for (int deg = 0; deg <= top; ++deg) {
    const Matrix& prev = cur.inclusion.mats[static_cast<std::size_t>(deg)];
    Matrix m(next.algebra->dim(deg), prev.cols(), f);
    for (std::size_t r = 0; r < prev.rows(); ++r)
      for (std::size_t c = 0; c < prev.cols(); ++c) m(r, c) = prev(r, c);
    next.inclusion.mats.push_back(std::move(m));
  }
  for (const auto& g : cur.generators) next.generators.push_back(pad(g, *next.algebra));
  Element gen = next.algebra->zero(e);
  if (e <= top) gen.coords[index_of(e, 1, 0)] = Scalar::one(f);
  next.generators.push_back(gen);

  next.monomials.resize(static_cast<std::size_t>(top + 1));
  for (int deg = 0; deg <= top; ++deg)
    for (std::size_t m = 0; m < lay.offset[static_cast<std::size_t>(deg)].size(); ++m) {
      int base_deg = deg - static_cast<int>(m) * e;
      for (std::size_t x = 0; x < old.dim(base_deg); ++x) {
        Extension::Monomial mono = cur.monomials[static_cast<std::size_t>(base_deg)][x];
        mono.exponents.push_back(static_cast<int>(m));
        next.monomials[static_cast<std::size_t>(deg)].push_back(std::move(mono));
      }
    }
  return next;
}

Extension trivial_extension(const CdgaPtr& a) {
  Extension ext;
  ext.algebra = a;
  ext.inclusion = identity_map(a);
  ext.monomials.resize(static_cast<std::size_t>(a->top() + 1));
  for (int deg = 0; deg <= a->top(); ++deg)
    for (std::size_t x = 0; x < a->dim(deg); ++x) ext.monomials[static_cast<std::size_t>(deg)].push_back({BasisRef{deg, x}, {}});
  return ext;
}

}  // namespace

Element evaluate(const Extension& ext, const Expr& expr, int degree) {
  const Cdga& alg = *ext.algebra;
  Element out = alg.zero(degree);
  for (const auto& term : expr) {
    int deg = term.base.degree;
    for (const auto& [g, pw] : term.powers) {
      if (g >= ext.generators.size()) throw ContractError("expression refers to a generator not adjoined yet");
      deg += pw * ext.generators[g].degree;
    }
    if (deg != degree)
      throw ContractError("expression term has degree " + std::to_string(deg) + ", expected " +
                          std::to_string(degree));
    if (term.coef.is_zero() || degree > alg.top()) continue;
    Element acc = ext.inclusion.apply(term.base);
    for (const auto& [g, pw] : term.powers)
      for (int k = 0; k < pw; ++k) acc = alg.mul(acc, ext.generators[g]);
    axpy(out.coords, term.coef, acc.coords);
  }
  return out;
}

Extension free_extension(const CdgaPtr& a, const std::vector<GeneratorSpec>& gens) {
  Extension ext = trivial_extension(a);
  for (const auto& g : gens) {
    if (g.degree < 1) throw ContractError("generator " + g.name + " must have positive degree");
    Element dg = evaluate(ext, g.d_image, g.degree + 1);
    if (!ext.algebra->apply_d(dg).is_zero())
      throw ContractError("d-image of generator " + g.name + " is not a cocycle");
    if (g.degree > a->top()) {
      // lives entirely above the truncation: record it without changing the algebra
      Extension same = ext;
      same.generators.push_back(Element{g.degree, {}});
      for (auto& per_deg : same.monomials)
        for (auto& mono : per_deg) mono.exponents.push_back(0);
      ext = std::move(same);
      continue;
    }
    ext = adjoin(ext, g.name, g.degree, dg);
  }
  return ext;
}

}  // namespace pdmodel

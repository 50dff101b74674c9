#include "pdmodel/duality.hpp"

#include "pdmodel/errors.hpp"

namespace pdmodel {

Scalar Orientation::operator()(const Element& x) const {
  if (x.degree != n) return Scalar(0);
  if (x.coords.size() != eps.size()) throw ContractError("orientation applied to an element of the wrong length");
  Scalar s(0);
  for (std::size_t i = 0; i < eps.size(); ++i)
    if (!eps[i].is_zero() && !x.coords[i].is_zero()) s += eps[i] * x.coords[i];
  return s;
}

Orientation derive_orientation(const Cdga& a, int n, const CohomologyRing& h) {
  if (n < 0 || n > h.top() || h.betti(n) != 1)
    throw HypothesisError("cannot orient: H^" + std::to_string(n) + " is not one-dimensional");
  (void)a;
  return Orientation{n, h.class_projector(n).row_vector(0)};
}

Orientation derive_orientation(const Cdga& a, int n) { return derive_orientation(a, n, cohomology(a)); }

Report check_orientation(const Cdga& a, const Orientation& o) {
  Report r;
  if (o.n < 0 || o.n > a.top() || o.eps.size() != a.dim(o.n)) {
    r.push_back({"orientation shape", "functional length does not match dim A^n"});
    return r;
  }
  if (o.n >= 1)
    for (std::size_t c = 0; c < a.dim(o.n - 1); ++c)
      if (!o(a.apply_d(a.basis_element(o.n - 1, c))).is_zero()) {
        r.push_back({"orientation chain map", "eps(d e_" + std::to_string(c) + ") != 0 in degree " + std::to_string(o.n - 1)});
        break;
      }
  Subspace ker = o.n < a.top() ? kernel(a.d(o.n)) : Subspace::full(a.dim(o.n), a.field());
  bool hits = false;
  for (std::size_t i = 0; i < ker.dim() && !hits; ++i) hits = !o(Element{o.n, ker.vector(i)}).is_zero();
  if (!hits) r.push_back({"orientation surjective", "eps vanishes on every cocycle of degree n"});
  return r;
}

Matrix pairing_matrix(const OrientedCdga& oa, int i) {
  const Cdga& a = oa.alg();
  const int n = oa.n();
  Matrix p(a.dim(i), a.dim(n - i), a.field());
  if (i < 0 || i > n) return p;
  for (std::size_t x = 0; x < a.dim(i); ++x)
    for (std::size_t y = 0; y < a.dim(n - i); ++y) {
      Scalar s = Scalar::zero(a.field());
      for (const auto& [k, c] : a.basis_product(i, x, n - i, y))
        if (!oa.eps.eps[k].is_zero()) s += c * oa.eps.eps[k];
      p(x, y) = s;
    }
  return p;
}

GradedSubspace orphans(const OrientedCdga& oa) {
  const Cdga& a = oa.alg();
  GradedSubspace o;
  for (int i = 0; i <= a.top(); ++i) {
    if (i > oa.n())
      o.push_back(Subspace::full(a.dim(i), a.field()));
    else
      o.push_back(kernel(pairing_matrix(oa, i).transpose()));
  }
  auto bad = check_ideal(a, o);
  if (!bad.empty()) throw InternalError("orphan set is not a differential ideal: " + describe(bad.front()));
  return o;
}

Report is_pd_cdga(const OrientedCdga& oa) {
  Report r;
  const Cdga& a = oa.alg();
  const int n = oa.n();
  if (a.dim(0) != 1) r.push_back({"connected", "A^0 is not one-dimensional"});
  for (int i = n + 1; i <= a.top(); ++i)
    if (a.dim(i) != 0) r.push_back({"vanishing above n", "A^" + std::to_string(i) + " is nonzero"});
  if (oa.eps.eps.size() != a.dim(n)) {
    r.push_back({"orientation shape", "functional length does not match dim A^n"});
    return r;
  }
  if (n >= 1)
    for (std::size_t c = 0; c < a.dim(n - 1); ++c)
      if (!oa.eps(a.apply_d(a.basis_element(n - 1, c))).is_zero()) {
        r.push_back({"eps(dA) = 0", "eps does not vanish on d e_" + std::to_string(c) + " (degree " + std::to_string(n - 1) + ")"});
        break;
      }
  for (int i = 0; i <= n; ++i) {
    Matrix p = pairing_matrix(oa, i);
    if (!is_nondegenerate(p))
      r.push_back({"pairing", "A^" + std::to_string(i) + " x A^" + std::to_string(n - i) + " pairing (" +
                                  std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + ", rank " +
                                  std::to_string(rank(p)) + ") is degenerate"});
  }
  return r;
}

PdQuotient pd_quotient(const OrientedCdga& oa, const GradedSubspace& orphan_ideal) {
  Quotient q = quotient_by_ideal(oa.algebra, orphan_ideal);
  const int n = oa.n();
  Orientation eps{n, {}};
  for (std::size_t c : q.kept[static_cast<std::size_t>(n)]) eps.eps.push_back(oa.eps.eps[c]);
  PdQuotient out{OrientedCdga{q.algebra, std::move(eps)}, std::move(q.projection)};
  Report r = is_pd_cdga(out.quotient);
  if (!r.empty()) throw InternalError("orphan quotient is not a Poincaré duality CDGA:\n" + to_string(r));
  return out;
}

PdQuotient pd_quotient(const OrientedCdga& oa) { return pd_quotient(oa, orphans(oa)); }

std::size_t subcomplex_betti(const Cdga& a, const GradedSubspace& ideal, int i) {
  if (i < 0 || i >= a.top()) throw ContractError("subcomplex_betti: degree out of range");
  const Subspace& here = ideal[static_cast<std::size_t>(i)];
  std::size_t cycles = here.intersect(kernel(a.d(i))).dim();
  std::size_t bounds = i == 0 ? 0 : ideal[static_cast<std::size_t>(i - 1)].mapped(a.d(i - 1)).dim();
  return cycles - bounds;
}

bool half_acyclic_up_to(const Cdga& a, const GradedSubspace& ideal, int n, int k) {
  if (k > n + 1) throw ContractError("half_acyclic_up_to: k must be at most n+1");
  for (int i = first_half_degree(n); i <= k; ++i)
    if (subcomplex_betti(a, ideal, i) != 0) return false;
  return true;
}

}  // namespace pdmodel

#pragma once

#include "pdmodel/cdga.hpp"
#include "pdmodel/cohomology.hpp"
#include "pdmodel/report.hpp"

namespace pdmodel {

/// Linear functional on A^n vanishing on exact elements and equal to 1 on some cocycle.
struct Orientation {
  int n = 0;
  Vector eps;  // coefficients on the basis of A^n

  /// Zero outside degree n.
  Scalar operator()(const Element& x) const;
};

struct OrientedCdga {
  CdgaPtr algebra;
  Orientation eps;

  int n() const { return eps.n; }
  const Cdga& alg() const { return *algebra; }
};

/// The functional reading the coefficient of the fundamental-class representative:
/// zero on im d and on the chosen complement of ker d in A^n.
/// Throws HypothesisError unless H^n is one-dimensional.
Orientation derive_orientation(const Cdga& a, int n);
Orientation derive_orientation(const Cdga& a, int n, const CohomologyRing& h);

/// Clean iff eps has the right length, eps(d A^{n-1}) = 0 and eps is nonzero on some cocycle.
Report check_orientation(const Cdga& a, const Orientation& o);

/// P_i[a][b] = eps(e_a * e_b) for e_a in A^i, e_b in A^{n-i}.
Matrix pairing_matrix(const OrientedCdga& oa, int i);

/// The orphan ideal: elements a with eps(a*b) = 0 for every b. All of A^i for i > n.
/// Throws InternalError if the result is not a d-stable ideal.
GradedSubspace orphans(const OrientedCdga& oa);

/// Clean iff (A, d, eps) is an oriented differential Poincaré duality algebra.
Report is_pd_cdga(const OrientedCdga& oa);

struct PdQuotient {
  OrientedCdga quotient;
  ChainAlgebraMap projection;
};

/// A / orphans with the induced orientation. The result is re-checked with is_pd_cdga.
PdQuotient pd_quotient(const OrientedCdga& oa);
PdQuotient pd_quotient(const OrientedCdga& oa, const GradedSubspace& orphan_ideal);

/// dim H^i of the subcomplex `ideal`: dim(I^i ∩ ker d) - dim d(I^{i-1}).
std::size_t subcomplex_betti(const Cdga& a, const GradedSubspace& ideal, int i);

/// True iff H^i(ideal) = 0 for every i with 2i >= n+2 and i <= k.
bool half_acyclic_up_to(const Cdga& a, const GradedSubspace& ideal, int n, int k);

/// Smallest degree i with 2i >= n + 2.
inline int first_half_degree(int n) { return (n + 3) / 2; }

}  // namespace pdmodel

#pragma once

#include <vector>

#include "pdmodel/cdga.hpp"
#include "pdmodel/report.hpp"

namespace pdmodel {

/// Cohomology of a CDGA in degrees 0..top-1 with chosen cocycle representatives.
///
/// Representatives in degree i are the rows of complement(im d, ker d), so
/// they are fixed by the algebra's coordinates alone.
class CohomologyRing {
 public:
  explicit CohomologyRing(const Cdga& a);

  const Field& field() const { return field_; }
  /// Highest degree computed (top of the algebra minus one).
  int top() const { return static_cast<int>(betti_.size()) - 1; }
  std::size_t betti(int deg) const;
  const std::vector<std::size_t>& betti() const { return betti_; }

  /// Rows are cocycles of A^deg whose classes form a basis of H^deg.
  const Matrix& reps(int deg) const { return reps_.at(static_cast<std::size_t>(deg)); }
  Element rep(int deg, std::size_t k) const;
  const Subspace& cocycles(int deg) const { return cocycles_.at(static_cast<std::size_t>(deg)); }
  const Subspace& boundaries(int deg) const { return boundaries_.at(static_cast<std::size_t>(deg)); }

  /// betti x dim matrix reading off class coordinates; it vanishes on boundaries and on the
  /// chosen complement of the cocycles.
  const Matrix& class_projector(int deg) const { return class_proj_.at(static_cast<std::size_t>(deg)); }

  bool is_cocycle(const Element& x) const;
  /// Coordinates of [x] in the representative basis. Throws ContractError if x is not a cocycle.
  Vector class_of(const Element& x) const;
  /// [rep_a][rep_b] in H^{i+j}; requires i + j <= top().
  Vector product(int i, std::size_t a, int j, std::size_t b) const;

 private:
  Field field_;
  std::vector<std::size_t> betti_;
  std::vector<Matrix> reps_;
  std::vector<Subspace> cocycles_;
  std::vector<Subspace> boundaries_;
  std::vector<Matrix> class_proj_;  // betti x dim: class coordinates of a cocycle
  std::vector<std::vector<std::vector<Vector>>> products_;  // [i][j] -> row-major betti_i x betti_j
};

CohomologyRing cohomology(const Cdga& a);

/// H(f) in the representative bases, degrees 0..min(source, target cohomology top).
/// Throws InternalError if f sends a representative to a non-cocycle.
std::vector<Matrix> induced(const ChainAlgebraMap& f);
std::vector<Matrix> induced(const ChainAlgebraMap& f, const CohomologyRing& hs, const CohomologyRing& ht);

/// True iff H(f) is bijective in every degree 0..up_to.
bool is_quasi_iso(const ChainAlgebraMap& f, int up_to);
bool is_quasi_iso(const ChainAlgebraMap& f, int up_to, const CohomologyRing& hs, const CohomologyRing& ht);

/// Clean iff H is a connected, simply-connected Poincaré duality algebra of dimension n.
Report check_H_PD(const CohomologyRing& h, int n);

/// Pairing matrix (i, j) -> coefficient of [rep_i][rep_j] on the fundamental class, H^k x H^{n-k}.
Matrix cohomology_pairing(const CohomologyRing& h, int n, int k);

}  // namespace pdmodel

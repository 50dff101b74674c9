#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pdmodel/linalg.hpp"

namespace pdmodel {

/// Homogeneous element: degree plus coordinates in that degree's basis.
struct Element {
  int degree = 0;
  Vector coords;

  bool is_zero() const { return pdmodel::is_zero(coords); }
  friend bool operator==(const Element&, const Element&) = default;
};

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// A reference to one basis vector: (degree, index).
struct BasisRef {
  int degree = 0;
  std::size_t index = 0;
  friend bool operator==(const BasisRef&, const BasisRef&) = default;
};

/// One violated axiom family with the first witnessing basis tuple found.
struct Violation {
  std::string axiom;  // "shape", "unit", "d^2", "commutativity", "leibniz", "associativity"
  std::vector<BasisRef> witness;
  std::size_t count = 0;  // number of violating tuples in this family
  std::string detail;
};

/// Finite-type connected CDGA, stored in degrees 0..top(). Products landing
/// above top() are zero. Structure constants are stored for deg a <= deg b;
/// the opposite order follows from the Koszul sign.
///
/// Values are immutable once built (see CdgaBuilder).
class Cdga {
 public:
  const Field& field() const { return field_; }
  int top() const { return top_; }
  std::size_t dim(int deg) const;
  std::size_t total_dim() const;
  std::vector<std::size_t> dims() const;
  const std::vector<std::string>& names(int deg) const { return names_.at(static_cast<std::size_t>(deg)); }

  /// d: A^deg -> A^{deg+1}; shape dim(deg+1) x dim(deg). For deg == top() the codomain is 0.
  const Matrix& d(int deg) const { return d_.at(static_cast<std::size_t>(deg)); }

  Element basis_element(int deg, std::size_t idx) const;
  Element zero(int deg) const;
  Element unit() const { return basis_element(0, 0); }

  /// Coefficients of e_a * e_b as a sparse vector in degree i+j.
  SparseVec basis_product(int i, std::size_t a, int j, std::size_t b) const;
  Element mul(const Element& x, const Element& y) const;
  Element apply_d(const Element& x) const;

  /// Raw stored product for deg_a <= deg_b (for serialization). Empty when the product is zero.
  const SparseVec& stored_product(int i, std::size_t a, int j, std::size_t b) const;

  friend bool operator==(const Cdga& a, const Cdga& b);

 private:
  friend class CdgaBuilder;
  std::size_t block_index(int i, int j) const;

  Field field_;
  int top_ = 0;
  std::vector<std::vector<std::string>> names_;
  std::vector<Matrix> d_;
  // blocks_[block_index(i,j)] for i <= j, i + j <= top_: row-major dim(i) x dim(j)
  std::vector<std::vector<SparseVec>> blocks_;
  std::vector<int> block_of_;  // (top_+1)^2 table, -1 where no block is stored
};

using CdgaPtr = std::shared_ptr<const Cdga>;

/// Mutable staging area for a Cdga. Unit products 1*x = x are filled in
/// automatically unless overridden.
class CdgaBuilder {
 public:
  CdgaBuilder(const Field& f, int top);
  explicit CdgaBuilder(const Cdga& from);

  const Field& field() const { return a_.field_; }
  int top() const { return a_.top_; }
  std::size_t dim(int deg) const { return a_.dim(deg); }

  /// Resets degree `deg` and everything touching it.
  CdgaBuilder& set_basis(int deg, std::vector<std::string> names);
  /// Sets d(e_from) in degree deg+1.
  CdgaBuilder& set_d(int deg, std::size_t from, const Vector& image);
  /// Replaces the whole d_deg matrix without shape checks; validate() reports mismatches.
  CdgaBuilder& set_d_matrix(int deg, Matrix m);
  /// Sets e_a * e_b for (i, a), (j, b). Orders and equal-degree mirrors are derived by the Koszul sign.
  CdgaBuilder& set_product(int i, std::size_t a, int j, std::size_t b, const Vector& value);
  CdgaBuilder& set_product(int i, std::size_t a, int j, std::size_t b, const SparseVec& value);
  /// Sets only the (a, b) slot of an equal-degree block (no mirror). Used to model tampering.
  CdgaBuilder& set_product_unsymmetrized(int i, std::size_t a, std::size_t b, const SparseVec& value);

  Cdga build() const { return a_; }
  CdgaPtr build_shared() const { return std::make_shared<const Cdga>(a_); }

 private:
  void allocate_blocks();
  Cdga a_;
};

/// Every violated axiom family; empty iff the algebra is a valid CDGA.
std::vector<Violation> validate(const Cdga& a);
std::string describe(const Violation& v);

/// Quotient by everything above `bound` (bound <= top) or zero-padding up to `bound` (bound > top).
Cdga truncate(const Cdga& a, int bound);

using GradedSubspace = std::vector<Subspace>;  // one per degree 0..top

GradedSubspace zero_family(const Cdga& a);
GradedSubspace full_family(const Cdga& a);

/// Degree-0 multiplicative chain map source -> target.
struct ChainAlgebraMap {
  CdgaPtr source;
  CdgaPtr target;
  std::vector<Matrix> mats;  // mats[i]: target^i x source^i, 0 <= i <= min(top)

  Element apply(const Element& x) const;
  int top() const { return static_cast<int>(mats.size()) - 1; }
};

ChainAlgebraMap identity_map(const CdgaPtr& a);
/// outer ∘ inner; requires inner.target == outer.source.
ChainAlgebraMap compose(const ChainAlgebraMap& outer, const ChainAlgebraMap& inner);
/// Chain-map, unit and multiplicativity violations (empty when clean).
std::vector<Violation> check_map(const ChainAlgebraMap& f);

/// Polynomial expression in the base algebra and the generators adjoined so far.
struct ExprTerm {
  Scalar coef;
  Element base;                                    // element of the base algebra
  std::vector<std::pair<std::size_t, int>> powers;  // (generator index, exponent)
};
using Expr = std::vector<ExprTerm>;

struct GeneratorSpec {
  std::string name;
  int degree = 0;
  Expr d_image;
};

/// Free graded-commutative extension A ⊗ Λ(gens), truncated at A's top degree.
struct Extension {
  CdgaPtr algebra;
  ChainAlgebraMap inclusion;
  std::vector<Element> generators;
  /// For every basis vector of the extension: its base-algebra factor and generator exponents.
  struct Monomial {
    BasisRef base;
    std::vector<int> exponents;
  };
  std::vector<std::vector<Monomial>> monomials;  // per degree
};

/// Adjoins generators in order; each d_image may use the base algebra and earlier generators.
/// Throws ContractError when a d_image has the wrong degree or is not a cocycle.
Extension free_extension(const CdgaPtr& a, const std::vector<GeneratorSpec>& gens);

/// Value of an expression inside an extension whose first generators match the expression's indices.
Element evaluate(const Extension& ext, const Expr& e, int degree);

struct Quotient {
  CdgaPtr algebra;
  ChainAlgebraMap projection;
  /// Basis of the quotient in degree i = classes of e_c for c in kept[i].
  std::vector<std::vector<std::size_t>> kept;
};

/// Quotient by a two-sided d-stable ideal; throws ContractError with a witness otherwise.
Quotient quotient_by_ideal(const CdgaPtr& a, const GradedSubspace& ideal);

/// Empty iff `ideal` is closed under multiplication by A and under d.
std::vector<Violation> check_ideal(const Cdga& a, const GradedSubspace& ideal);

}  // namespace pdmodel

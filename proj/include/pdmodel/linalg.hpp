#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdmodel/scalar.hpp"

namespace pdmodel {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n, const Field& f);
Vector unit_vector(std::size_t n, std::size_t i, const Field& f);
bool is_zero(std::span<const Scalar> v);
/// y += c * x
void axpy(Vector& y, const Scalar& c, std::span<const Scalar> x);

/// Dense row-major matrix over a Field. Matrices act on column vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Field& f);
  static Matrix identity(std::size_t n, const Field& f);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols, const Field& f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const { return Vector(row(r).begin(), row(r).end()); }
  Vector column(std::size_t c) const;

  Matrix transpose() const;
  Vector apply(std::span<const Scalar> v) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Linear span inside k^ambient, stored as reduced row-echelon basis rows.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(std::size_t ambient, const Field& f);
  static Subspace full(std::size_t ambient, const Field& f);
  /// Span of the given vectors (need not be independent).
  static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient, const Field& f);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Field& field() const { return basis_.field(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector vector(std::size_t i) const { return basis_.row_vector(i); }
  std::vector<Vector> vectors() const;

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of v in the echelon basis, or nullopt if v is outside.
  std::optional<Vector> coordinates(std::span<const Scalar> v) const;
  /// v minus its components along the pivots; zero iff v lies in the span.
  Vector reduce(std::span<const Scalar> v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// m applied to every basis vector, spanned.
  Subspace mapped(const Matrix& m) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);

/// S with S ⊕ inner = outer. Greedy over outer's echelon basis rows in order,
/// keeping those independent of inner and of the rows already kept.
/// Throws ContractError if inner is not contained in outer.
Subspace complement(const Subspace& inner, const Subspace& outer);

/// Some x with m x = b (free variables zero), or nullopt.
std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b);

/// Throws ContractError if m is not square or is singular.
Matrix invert(const Matrix& m);

bool is_nondegenerate(const Matrix& pairing);

/// Incremental echelon basis used for independence tests and greedy selection.
class Echelonizer {
 public:
  explicit Echelonizer(std::size_t ambient) : ambient_(ambient) {}
  /// Reduces v against the rows so far; returns true and stores it when independent.
  bool insert(std::span<const Scalar> v);
  bool independent(std::span<const Scalar> v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  Vector reduced(std::span<const Scalar> v) const;

  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace pdmodel

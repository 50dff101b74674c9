#include "pdmodel/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "pdmodel/errors.hpp"

namespace pdmodel {

Vector zero_vector(std::size_t n, const Field& f) { return Vector(n, Scalar::zero(f)); }

Vector unit_vector(std::size_t n, std::size_t i, const Field& f) {
  Vector v = zero_vector(n, f);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

void axpy(Vector& y, const Scalar& c, std::span<const Scalar> x) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

Matrix::Matrix(std::size_t rows, std::size_t cols, const Field& f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(std::size_t n, const Field& f) {
  Matrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols, const Field& f) {
  Matrix m(rows.size(), cols, f);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ContractError("row length mismatch in Matrix::from_rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw ContractError("Matrix::apply: vector length mismatch");
  Vector out = zero_vector(rows_, field_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& e = (*this)(r, c);
      if (!e.is_zero()) out[r] += e * v[c];
    }
  }
  return out;
}

bool Matrix::is_zero() const { return pdmodel::is_zero(data_); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ContractError("matrix product: inner dimension mismatch");
  Matrix out(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& e = a(i, k);
      if (e.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += e * b(k, j);
    }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, {}, 0};
  Matrix& a = res.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t c = col; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
    Scalar inv = a(row, col).inverse();
    for (std::size_t c = col; c < a.cols(); ++c)
      if (!a(row, c).is_zero()) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      Scalar factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (!a(row, c).is_zero()) a(r, c) -= factor * a(row, c);
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = res.pivots.size();
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

// --- Subspace ---------------------------------------------------------------

Subspace Subspace::zero(std::size_t ambient, const Field& f) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient, f);
  return s;
}

Subspace Subspace::full(std::size_t ambient, const Field& f) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(ambient, f);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::span(const std::vector<Vector>& vectors, std::size_t ambient, const Field& f) {
  Subspace s;
  s.ambient_ = ambient;
  if (vectors.empty()) {
    s.basis_ = Matrix(0, ambient, f);
    return s;
  }
  RrefResult r = rref(Matrix::from_rows(vectors, ambient, f));
  Matrix b(r.rank, ambient, f);
  for (std::size_t i = 0; i < r.rank; ++i)
    std::copy(r.reduced.row(i).begin(), r.reduced.row(i).end(), b.row(i).begin());
  s.basis_ = std::move(b);
  s.pivots_ = std::move(r.pivots);
  return s;
}

std::vector<Vector> Subspace::vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(vector(i));
  return out;
}

Vector Subspace::reduce(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw ContractError("Subspace: vector length mismatch");
  Vector out(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Scalar c = out[pivots_[i]];
    if (!c.is_zero()) axpy(out, -c, basis_.row(i));
  }
  return out;
}

bool Subspace::contains(std::span<const Scalar> v) const { return pdmodel::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

std::optional<Vector> Subspace::coordinates(std::span<const Scalar> v) const {
  if (!contains(v)) return std::nullopt;
  Vector c;
  c.reserve(dim());
  for (std::size_t p : pivots_) c.push_back(v[p]);
  return c;
}

Subspace Subspace::sum(const Subspace& other) const {
  std::vector<Vector> all = vectors();
  for (auto& v : other.vectors()) all.push_back(std::move(v));
  return span(all, ambient_, field());
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (dim() == 0 || other.dim() == 0) return zero(ambient_, field());
  // x·U = y·W  <=>  (x, -y) in the kernel of the column matrix [U^T | -W^T]
  Matrix m(ambient_, dim() + other.dim(), field());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t a = 0; a < ambient_; ++a) m(a, i) = basis_(i, a);
  for (std::size_t j = 0; j < other.dim(); ++j)
    for (std::size_t a = 0; a < ambient_; ++a) m(a, dim() + j) = -other.basis_(j, a);
  Subspace k = kernel(m);
  std::vector<Vector> out;
  for (std::size_t r = 0; r < k.dim(); ++r) {
    Vector v = zero_vector(ambient_, field());
    for (std::size_t i = 0; i < dim(); ++i) axpy(v, k.basis_(r, i), basis_.row(i));
    out.push_back(std::move(v));
  }
  return span(out, ambient_, field());
}

Subspace Subspace::mapped(const Matrix& m) const {
  if (m.cols() != ambient_) throw ContractError("Subspace::mapped: shape mismatch");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(m.apply(basis_.row(i)));
  return span(out, m.rows(), field());
}

Subspace kernel(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = unit_vector(m.cols(), free, m.field());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(basis, m.cols(), m.field());
}

Subspace image(const Matrix& m) {
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Subspace::span(cols, m.rows(), m.field());
}

Subspace complement(const Subspace& inner, const Subspace& outer) {
  if (inner.ambient() != outer.ambient()) throw ContractError("complement: ambient mismatch");
  if (!outer.contains(inner)) throw ContractError("complement: inner subspace is not contained in outer");
  Echelonizer ech(outer.ambient());
  for (std::size_t i = 0; i < inner.dim(); ++i) ech.insert(inner.basis().row(i));
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < outer.dim(); ++i)
    if (ech.insert(outer.basis().row(i))) kept.push_back(outer.vector(i));
  return Subspace::span(kept, outer.ambient(), outer.field());
}

std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw ContractError("solve: right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1, m.field());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  RrefResult res = rref(aug);
  Vector x = zero_vector(m.cols(), m.field());
  for (std::size_t i = 0; i < res.pivots.size(); ++i) {
    if (res.pivots[i] == m.cols()) return std::nullopt;
    x[res.pivots[i]] = res.reduced(i, m.cols());
  }
  return x;
}

Matrix invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractError("invert: matrix is not square");
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n, m.field());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Scalar::one(m.field());
  }
  RrefResult res = rref(aug);
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) throw ContractError("invert: matrix is singular");
  Matrix out(n, n, m.field());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = res.reduced(r, n + c);
  return out;
}

bool is_nondegenerate(const Matrix& pairing) {
  return pairing.rows() == pairing.cols() && rank(pairing) == pairing.rows();
}

// --- Echelonizer ------------------------------------------------------------

Vector Echelonizer::reduced(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw ContractError("Echelonizer: vector length mismatch");
  Vector out(v.begin(), v.end());
  // each stored row is zero at the pivots of earlier rows, so one pass in insertion order suffices
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = out[pivots_[i]];
    if (!c.is_zero()) axpy(out, -c, rows_[i]);
  }
  return out;
}

bool Echelonizer::independent(std::span<const Scalar> v) const { return !is_zero(reduced(v)); }

bool Echelonizer::insert(std::span<const Scalar> v) {
  Vector r = reduced(v);
  auto it = std::find_if(r.begin(), r.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (it == r.end()) return false;
  std::size_t p = static_cast<std::size_t>(it - r.begin());
  Scalar inv = r[p].inverse();
  for (auto& s : r)
    if (!s.is_zero()) s *= inv;
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

}  // namespace pdmodel

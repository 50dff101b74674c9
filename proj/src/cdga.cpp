#include "pdmodel/cdga.hpp"

#include <sstream>

#include "pdmodel/errors.hpp"

namespace pdmodel {

namespace {

const SparseVec kEmpty{};

SparseVec to_sparse(const Vector& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

SparseVec scaled(const SparseVec& v, int sign) {
  if (sign == 1) return v;
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) out.emplace_back(i, -c);
  return out;
}

}  // namespace

// --- Cdga -------------------------------------------------------------------

std::size_t Cdga::dim(int deg) const {
  if (deg < 0 || deg > top_) return 0;
  return names_[static_cast<std::size_t>(deg)].size();
}

std::size_t Cdga::total_dim() const {
  std::size_t n = 0;
  for (int i = 0; i <= top_; ++i) n += dim(i);
  return n;
}

std::vector<std::size_t> Cdga::dims() const {
  std::vector<std::size_t> out;
  for (int i = 0; i <= top_; ++i) out.push_back(dim(i));
  return out;
}

std::size_t Cdga::block_index(int i, int j) const {
  if (i < 0 || j < 0 || i > j || i + j > top_) throw ContractError("no stored product block for degrees " +
                                                                   std::to_string(i) + "," + std::to_string(j));
  return static_cast<std::size_t>(block_of_[static_cast<std::size_t>(i * (top_ + 1) + j)]);
}

Element Cdga::basis_element(int deg, std::size_t idx) const {
  if (idx >= dim(deg)) throw ContractError("basis index out of range");
  return Element{deg, unit_vector(dim(deg), idx, field_)};
}

Element Cdga::zero(int deg) const { return Element{deg, zero_vector(dim(deg), field_)}; }

const SparseVec& Cdga::stored_product(int i, std::size_t a, int j, std::size_t b) const {
  const auto& block = blocks_[block_index(i, j)];
  std::size_t k = a * dim(j) + b;
  return k < block.size() ? block[k] : kEmpty;
}

SparseVec Cdga::basis_product(int i, std::size_t a, int j, std::size_t b) const {
  if (i + j > top_) return {};
  if (i <= j) return stored_product(i, a, j, b);
  return scaled(stored_product(j, b, i, a), koszul_sign(static_cast<long>(i) * j));
}

Element Cdga::mul(const Element& x, const Element& y) const {
  int deg = x.degree + y.degree;
  Element out = zero(deg);
  if (deg > top_) return out;
  if (x.coords.size() != dim(x.degree) || y.coords.size() != dim(y.degree))
    throw ContractError("Cdga::mul: coordinate length does not match degree");
  for (std::size_t a = 0; a < x.coords.size(); ++a) {
    if (x.coords[a].is_zero()) continue;
    for (std::size_t b = 0; b < y.coords.size(); ++b) {
      if (y.coords[b].is_zero()) continue;
      Scalar c = x.coords[a] * y.coords[b];
      for (const auto& [k, v] : basis_product(x.degree, a, y.degree, b)) out.coords[k] += c * v;
    }
  }
  return out;
}

Element Cdga::apply_d(const Element& x) const {
  if (x.degree < 0 || x.degree > top_) return Element{x.degree + 1, {}};
  if (x.coords.size() != dim(x.degree)) throw ContractError("Cdga::apply_d: coordinate length mismatch");
  return Element{x.degree + 1, d(x.degree).apply(x.coords)};
}

bool operator==(const Cdga& a, const Cdga& b) {
  return a.field_ == b.field_ && a.top_ == b.top_ && a.names_ == b.names_ && a.d_ == b.d_ &&
         a.blocks_ == b.blocks_;
}

// --- CdgaBuilder ------------------------------------------------------------

CdgaBuilder::CdgaBuilder(const Field& f, int top) {
  if (top < 0) throw ContractError("negative top degree");
  a_.field_ = f;
  a_.top_ = top;
  a_.names_.assign(static_cast<std::size_t>(top + 1), {});
  a_.names_[0] = {"1"};
  a_.d_.clear();
  for (int i = 0; i <= top; ++i) a_.d_.emplace_back(a_.dim(i + 1), a_.dim(i), f);
  allocate_blocks();
}

CdgaBuilder::CdgaBuilder(const Cdga& from) : a_(from) {}

void CdgaBuilder::allocate_blocks() {
  int n = a_.top_ + 1;
  a_.block_of_.assign(static_cast<std::size_t>(n * n), -1);
  a_.blocks_.clear();
  for (int i = 0; i < n; ++i)
    for (int j = i; i + j <= a_.top_; ++j) {
      a_.block_of_[static_cast<std::size_t>(i * n + j)] = static_cast<int>(a_.blocks_.size());
      a_.blocks_.emplace_back(a_.dim(i) * a_.dim(j));
    }
  // unit products
  if (a_.dim(0) >= 1)
    for (int j = 0; j <= a_.top_; ++j)
      for (std::size_t b = 0; b < a_.dim(j); ++b)
        a_.blocks_[a_.block_index(0, j)][b] = SparseVec{{b, Scalar::one(a_.field_)}};
}

CdgaBuilder& CdgaBuilder::set_basis(int deg, std::vector<std::string> names) {
  if (deg < 0 || deg > a_.top_) throw ContractError("set_basis: degree out of range");
  auto u = static_cast<std::size_t>(deg);
  a_.names_[u] = std::move(names);
  // reshape everything that touches this degree
  if (deg > 0) a_.d_[u - 1] = Matrix(a_.dim(deg), a_.dim(deg - 1), a_.field_);
  a_.d_[u] = Matrix(a_.dim(deg + 1), a_.dim(deg), a_.field_);
  int n = a_.top_ + 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; i + j <= a_.top_; ++j) {
      if (i != deg && j != deg) continue;
      auto& block = a_.blocks_[a_.block_index(i, j)];
      block.assign(a_.dim(i) * a_.dim(j), SparseVec{});
      if (i == 0 && a_.dim(0) >= 1)
        for (std::size_t b = 0; b < a_.dim(j); ++b) block[b] = SparseVec{{b, Scalar::one(a_.field_)}};
    }
  return *this;
}

CdgaBuilder& CdgaBuilder::set_d(int deg, std::size_t from, const Vector& image) {
  if (deg < 0 || deg >= a_.top_) throw ContractError("set_d: degree out of range");
  Matrix& m = a_.d_[static_cast<std::size_t>(deg)];
  if (from >= m.cols() || image.size() != m.rows()) throw ContractError("set_d: shape mismatch");
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, from) = image[r];
  return *this;
}

CdgaBuilder& CdgaBuilder::set_d_matrix(int deg, Matrix m) {
  if (deg < 0 || deg > a_.top_) throw ContractError("set_d_matrix: degree out of range");
  a_.d_[static_cast<std::size_t>(deg)] = std::move(m);
  return *this;
}

CdgaBuilder& CdgaBuilder::set_product(int i, std::size_t a, int j, std::size_t b, const Vector& value) {
  return set_product(i, a, j, b, to_sparse(value));
}

CdgaBuilder& CdgaBuilder::set_product(int i, std::size_t a, int j, std::size_t b, const SparseVec& value) {
  if (i > j) return set_product(j, b, i, a, scaled(value, koszul_sign(static_cast<long>(i) * j)));
  if (i < 0 || i + j > a_.top_) throw ContractError("set_product: degrees out of range");
  if (a >= a_.dim(i) || b >= a_.dim(j)) throw ContractError("set_product: basis index out of range");
  for (const auto& [k, c] : value)
    if (k >= a_.dim(i + j)) throw ContractError("set_product: value index out of range");
  auto& block = a_.blocks_[a_.block_index(i, j)];
  SparseVec clean;
  for (const auto& e : value)
    if (!e.second.is_zero()) clean.push_back(e);
  block[a * a_.dim(j) + b] = clean;
  if (i == j && a != b) block[b * a_.dim(j) + a] = scaled(clean, koszul_sign(static_cast<long>(i) * i));
  return *this;
}

CdgaBuilder& CdgaBuilder::set_product_unsymmetrized(int i, std::size_t a, std::size_t b, const SparseVec& value) {
  if (2 * i > a_.top_ || a >= a_.dim(i) || b >= a_.dim(i)) throw ContractError("set_product_unsymmetrized: out of range");
  a_.blocks_[a_.block_index(i, i)][a * a_.dim(i) + b] = value;
  return *this;
}

// --- validation -------------------------------------------------------------

namespace {

class ViolationLog {
 public:
  void add(const std::string& axiom, std::vector<BasisRef> witness, std::string detail) {
    for (auto& v : out_)
      if (v.axiom == axiom) {
        ++v.count;
        return;
      }
    out_.push_back(Violation{axiom, std::move(witness), 1, std::move(detail)});
  }
  std::vector<Violation> take() { return std::move(out_); }
  bool empty() const { return out_.empty(); }

 private:
  std::vector<Violation> out_;
};

Vector sparse_to_dense(const SparseVec& s, std::size_t n, const Field& f) {
  Vector v = zero_vector(n, f);
  for (const auto& [k, c] : s) v[k] += c;
  return v;
}

// (sum_k s_k e_k) * e_c with e_k in degree i, e_c in degree j
Vector times_basis(const Cdga& a, int i, const SparseVec& s, int j, std::size_t c) {
  Vector out = zero_vector(a.dim(i + j), a.field());
  if (i + j > a.top()) return out;
  for (const auto& [k, coef] : s)
    for (const auto& [r, v] : a.basis_product(i, k, j, c)) out[r] += coef * v;
  return out;
}

// e_a * (sum_k s_k e_k) with e_a in degree i, e_k in degree j
Vector basis_times(const Cdga& a, int i, std::size_t idx, int j, const SparseVec& s) {
  Vector out = zero_vector(a.dim(i + j), a.field());
  if (i + j > a.top()) return out;
  for (const auto& [k, coef] : s)
    for (const auto& [r, v] : a.basis_product(i, idx, j, k)) out[r] += coef * v;
  return out;
}

void check_shapes(const Cdga& a, ViolationLog& log) {
  if (a.dim(0) != 1) log.add("shape", {BasisRef{0, 0}}, "degree 0 must be one-dimensional (the unit)");
  for (int i = 0; i <= a.top(); ++i) {
    const Matrix& m = a.d(i);
    if (m.rows() != a.dim(i + 1) || m.cols() != a.dim(i))
      log.add("shape", {BasisRef{i, 0}},
              "d in degree " + std::to_string(i) + " has shape " + std::to_string(m.rows()) + "x" +
                  std::to_string(m.cols()) + ", expected " + std::to_string(a.dim(i + 1)) + "x" +
                  std::to_string(a.dim(i)));
  }
  for (int i = 0; i <= a.top(); ++i)
    for (int j = i; i + j <= a.top(); ++j)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < a.dim(j); ++y)
          for (const auto& [k, c] : a.stored_product(i, x, j, y))
            if (k >= a.dim(i + j))
              log.add("shape", {BasisRef{i, x}, BasisRef{j, y}}, "product coefficient index out of range");
}

}  // namespace

std::vector<Violation> validate(const Cdga& a) {
  ViolationLog log;
  check_shapes(a, log);
  if (!log.empty()) return log.take();
  const Field& f = a.field();
  const int top = a.top();

  // unit
  for (int j = 0; j <= top; ++j)
    for (std::size_t b = 0; b < a.dim(j); ++b) {
      Vector p = sparse_to_dense(a.basis_product(0, 0, j, b), a.dim(j), f);
      if (p != unit_vector(a.dim(j), b, f)) log.add("unit", {BasisRef{0, 0}, BasisRef{j, b}}, "1*x != x");
    }

  // d^2 = 0
  for (int i = 0; i + 1 <= top; ++i) {
    Matrix dd = a.d(i + 1) * a.d(i);
    for (std::size_t c = 0; c < dd.cols(); ++c)
      if (!pdmodel::is_zero(dd.column(c))) log.add("d^2", {BasisRef{i, c}}, "d(d(x)) != 0");
  }

  // graded commutativity inside equal-degree blocks; odd squares vanish
  for (int i = 1; 2 * i <= top; ++i)
    for (std::size_t x = 0; x < a.dim(i); ++x) {
      if (i % 2 == 1 && !a.stored_product(i, x, i, x).empty())
        log.add("commutativity", {BasisRef{i, x}, BasisRef{i, x}}, "odd-degree element squares to nonzero");
      for (std::size_t y = x + 1; y < a.dim(i); ++y) {
        Vector xy = sparse_to_dense(a.stored_product(i, x, i, y), a.dim(2 * i), f);
        Vector yx = sparse_to_dense(a.stored_product(i, y, i, x), a.dim(2 * i), f);
        if (i % 2 == 1)
          for (auto& s : yx) s = -s;
        if (xy != yx) log.add("commutativity", {BasisRef{i, x}, BasisRef{i, y}}, "b*a != (-1)^{|a||b|} a*b");
      }
    }

  // Leibniz: d(ab) = (da)b + (-1)^|a| a(db)
  for (int i = 0; i <= top; ++i)
    for (int j = i; i + j < top; ++j)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < a.dim(j); ++y) {
          Vector lhs = a.d(i + j).apply(sparse_to_dense(a.basis_product(i, x, j, y), a.dim(i + j), f));
          Vector rhs = times_basis(a, i + 1, to_sparse(a.d(i).column(x)), j, y);
          Vector second = basis_times(a, i, x, j + 1, to_sparse(a.d(j).column(y)));
          axpy(rhs, Scalar(koszul_sign(i)), second);
          if (lhs != rhs) log.add("leibniz", {BasisRef{i, x}, BasisRef{j, y}}, "d(ab) != (da)b + (-1)^|a| a(db)");
        }

  // associativity on all ordered triples of positive degree
  for (int i = 1; i <= top; ++i)
    for (int j = 1; i + j <= top; ++j)
      for (int k = 1; i + j + k <= top; ++k)
        for (std::size_t x = 0; x < a.dim(i); ++x)
          for (std::size_t y = 0; y < a.dim(j); ++y) {
            SparseVec xy = a.basis_product(i, x, j, y);
            for (std::size_t z = 0; z < a.dim(k); ++z) {
              Vector lhs = times_basis(a, i + j, xy, k, z);
              Vector rhs = basis_times(a, i, x, j + k, a.basis_product(j, y, k, z));
              if (lhs != rhs)
                log.add("associativity", {BasisRef{i, x}, BasisRef{j, y}, BasisRef{k, z}}, "(ab)c != a(bc)");
            }
          }
  return log.take();
}

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << v.axiom << ": " << v.detail << " at (";
  for (std::size_t i = 0; i < v.witness.size(); ++i)
    os << (i ? ", " : "") << "deg " << v.witness[i].degree << " #" << v.witness[i].index;
  os << ")";
  if (v.count > 1) os << " [" << v.count << " tuples]";
  return os.str();
}

// --- truncation / families --------------------------------------------------

Cdga truncate(const Cdga& a, int bound) {
  if (bound < 0) throw ContractError("truncate: negative bound");
  CdgaBuilder b(a.field(), bound);
  int shared = std::min(bound, a.top());
  for (int i = 1; i <= shared; ++i) b.set_basis(i, a.names(i));
  for (int i = 0; i < shared; ++i) b.set_d_matrix(i, a.d(i));
  for (int i = 0; i <= shared; ++i)
    for (int j = i; i + j <= shared; ++j)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < a.dim(j); ++y) {
          if (i == j && y < x) continue;
          b.set_product(i, x, j, y, a.stored_product(i, x, j, y));
        }
  // equal-degree blocks may be stored asymmetrically in tampered input; copy raw
  for (int i = 1; 2 * i <= shared; ++i)
    for (std::size_t x = 0; x < a.dim(i); ++x)
      for (std::size_t y = 0; y < x; ++y) b.set_product_unsymmetrized(i, x, y, a.stored_product(i, x, i, y));
  return b.build();
}

GradedSubspace zero_family(const Cdga& a) {
  GradedSubspace out;
  for (int i = 0; i <= a.top(); ++i) out.push_back(Subspace::zero(a.dim(i), a.field()));
  return out;
}

GradedSubspace full_family(const Cdga& a) {
  GradedSubspace out;
  for (int i = 0; i <= a.top(); ++i) out.push_back(Subspace::full(a.dim(i), a.field()));
  return out;
}

}  // namespace pdmodel

#include "pdmodel/cohomology.hpp"

#include <algorithm>

#include "pdmodel/errors.hpp"

namespace pdmodel {

CohomologyRing::CohomologyRing(const Cdga& a) : field_(a.field()) {
  const int top = a.top() - 1;
  for (int i = 0; i <= top; ++i) {
    Subspace ker = kernel(a.d(i));
    Subspace im = i == 0 ? Subspace::zero(a.dim(0), field_) : image(a.d(i - 1));
    Subspace reps = complement(im, ker);
    betti_.push_back(reps.dim());

    // columns [reps | im | rest] form a basis of A^i; the first betti rows of
    // its inverse read off class coordinates
    Subspace rest = complement(ker, Subspace::full(a.dim(i), field_));
    std::vector<Vector> cols = reps.vectors();
    for (auto& v : im.vectors()) cols.push_back(std::move(v));
    for (auto& v : rest.vectors()) cols.push_back(std::move(v));
    Matrix inv = invert(Matrix::from_rows(cols, a.dim(i), field_).transpose());
    Matrix proj(reps.dim(), a.dim(i), field_);
    for (std::size_t r = 0; r < reps.dim(); ++r)
      for (std::size_t c = 0; c < a.dim(i); ++c) proj(r, c) = inv(r, c);

    reps_.push_back(reps.basis());
    cocycles_.push_back(std::move(ker));
    boundaries_.push_back(std::move(im));
    class_proj_.push_back(std::move(proj));
  }
  products_.resize(betti_.size());
  for (int i = 0; i <= top; ++i) {
    products_[static_cast<std::size_t>(i)].resize(betti_.size());
    for (int j = 0; i + j <= top; ++j) {
      auto& block = products_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (std::size_t x = 0; x < betti(i); ++x)
        for (std::size_t y = 0; y < betti(j); ++y) block.push_back(class_of(a.mul(rep(i, x), rep(j, y))));
    }
  }
}

std::size_t CohomologyRing::betti(int deg) const {
  if (deg < 0 || deg > top()) return 0;
  return betti_[static_cast<std::size_t>(deg)];
}

Element CohomologyRing::rep(int deg, std::size_t k) const { return Element{deg, reps(deg).row_vector(k)}; }

bool CohomologyRing::is_cocycle(const Element& x) const {
  return x.degree >= 0 && x.degree <= top() && cocycles(x.degree).contains(x.coords);
}

Vector CohomologyRing::class_of(const Element& x) const {
  if (!is_cocycle(x)) throw ContractError("class_of: element is not a cocycle in degree " + std::to_string(x.degree));
  return class_proj_[static_cast<std::size_t>(x.degree)].apply(x.coords);
}

Vector CohomologyRing::product(int i, std::size_t a, int j, std::size_t b) const {
  if (i < 0 || j < 0 || i + j > top()) throw ContractError("CohomologyRing::product: degree out of range");
  return products_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][a * betti(j) + b];
}

CohomologyRing cohomology(const Cdga& a) { return CohomologyRing(a); }

std::vector<Matrix> induced(const ChainAlgebraMap& f, const CohomologyRing& hs, const CohomologyRing& ht) {
  std::vector<Matrix> out;
  int top = std::min({hs.top(), ht.top(), f.top()});
  for (int i = 0; i <= top; ++i) {
    Matrix m(ht.betti(i), hs.betti(i), hs.field());
    for (std::size_t a = 0; a < hs.betti(i); ++a) {
      Element img = f.apply(hs.rep(i, a));
      if (!ht.is_cocycle(img)) throw InternalError("induced: map sends a cocycle to a non-cocycle in degree " + std::to_string(i));
      Vector c = ht.class_of(img);
      for (std::size_t r = 0; r < c.size(); ++r) m(r, a) = c[r];
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Matrix> induced(const ChainAlgebraMap& f) {
  return induced(f, cohomology(*f.source), cohomology(*f.target));
}

bool is_quasi_iso(const ChainAlgebraMap& f, int up_to, const CohomologyRing& hs, const CohomologyRing& ht) {
  if (up_to > std::min({hs.top(), ht.top(), f.top()}))
    throw ContractError("is_quasi_iso: degree bound exceeds the computed cohomology range");
  auto mats = induced(f, hs, ht);
  for (int i = 0; i <= up_to; ++i)
    if (!is_nondegenerate(mats[static_cast<std::size_t>(i)])) return false;
  return true;
}

bool is_quasi_iso(const ChainAlgebraMap& f, int up_to) {
  return is_quasi_iso(f, up_to, cohomology(*f.source), cohomology(*f.target));
}

Matrix cohomology_pairing(const CohomologyRing& h, int n, int k) {
  Matrix m(h.betti(k), h.betti(n - k), h.field());
  for (std::size_t a = 0; a < h.betti(k); ++a)
    for (std::size_t b = 0; b < h.betti(n - k); ++b) m(a, b) = h.product(k, a, n - k, b).at(0);
  return m;
}

Report check_H_PD(const CohomologyRing& h, int n) {
  Report r;
  if (n < 0 || n > h.top()) {
    r.push_back({"range", "dimension " + std::to_string(n) + " outside the computed cohomology range 0.." +
                              std::to_string(h.top())});
    return r;
  }
  if (h.betti(0) != 1) r.push_back({"connected", "betti_0 = " + std::to_string(h.betti(0)) + ", expected 1"});
  if (n >= 1 && h.betti(1) != 0) r.push_back({"simply-connected", "betti_1 = " + std::to_string(h.betti(1)) + ", expected 0"});
  if (h.betti(n) != 1) r.push_back({"fundamental class", "betti_" + std::to_string(n) + " = " + std::to_string(h.betti(n)) + ", expected 1"});
  for (int i = n + 1; i <= h.top(); ++i)
    if (h.betti(i) != 0) r.push_back({"vanishing above n", "betti_" + std::to_string(i) + " = " + std::to_string(h.betti(i))});
  if (!r.empty()) return r;
  for (int k = 0; k <= n; ++k)
    if (!is_nondegenerate(cohomology_pairing(h, n, k)))
      r.push_back({"pairing", "cohomology pairing H^" + std::to_string(k) + " x H^" + std::to_string(n - k) +
                                  " is degenerate"});
  return r;
}

}  // namespace pdmodel

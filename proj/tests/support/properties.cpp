#include "properties.hpp"

#include <sstream>

#include "pdmodel/algebra_io.hpp"
#include "random_cdga.hpp"

namespace testsupport {

using namespace pdmodel;

std::vector<oracle::Vec> to_rows(const Matrix& m) {
  std::vector<oracle::Vec> out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).value();
  return out;
}

oracle::Algebra to_oracle(const Cdga& a, int n, const std::optional<Orientation>& eps) {
  AlgebraDocument doc{std::make_shared<const Cdga>(a), n, eps};
  return oracle::parse(print_algebra(doc));
}

namespace {

// Rows whose common kernel in A^i is the orphan space O^i.
std::vector<oracle::Vec> orphan_conditions(const oracle::Algebra& a, int i) {
  std::vector<oracle::Vec> rows;
  if (i > a.n) return rows;
  const oracle::Vec& eps = *a.orientation;
  for (std::size_t b = 0; b < a.dim(a.n - i); ++b) {
    oracle::Vec row(a.dim(i));
    for (std::size_t x = 0; x < a.dim(i); ++x) {
      oracle::Vec prod = a.product(i, x, a.n - i, b);
      mpq_class s = 0;
      for (std::size_t t = 0; t < prod.size(); ++t) s += prod[t] * eps[t];
      row[x] = a.norm(s);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<oracle::Vec> orphan_basis(const oracle::Algebra& a, int i) {
  if (i < 0) return {};
  return oracle::kernel(orphan_conditions(a, i), a.dim(i), a.p);
}

}  // namespace

std::size_t orphan_betti(const oracle::Algebra& a, int i) {
  auto cond = orphan_conditions(a, i);
  for (auto& row : oracle::d_rows(a, i)) cond.push_back(row);
  std::size_t cocycles = oracle::kernel(cond, a.dim(i), a.p).size();
  std::vector<oracle::Vec> images;
  for (const auto& v : orphan_basis(a, i - 1)) images.push_back(a.apply_d(i - 1, v));
  std::size_t boundaries = images.empty() ? 0 : oracle::rank(images, a.p);
  return cocycles - boundaries;
}

bool half_acyclic(const oracle::Algebra& a, int k) {
  for (int i = (a.n + 3) / 2; i <= k; ++i)
    if (orphan_betti(a, i) != 0) return false;
  return true;
}

bool quasi_iso(const oracle::Algebra& source, const oracle::Algebra& target, const std::vector<Matrix>& mats,
               int up_to) {
  auto bs = oracle::betti(source), bt = oracle::betti(target);
  for (int i = 0; i <= up_to; ++i) {
    auto ui = static_cast<std::size_t>(i);
    if (ui >= bs.size() || ui >= bt.size() || bs[ui] != bt[ui]) return false;
    std::vector<oracle::Vec> boundaries;
    if (i > 0)
      for (std::size_t c = 0; c < target.dim(i - 1); ++c) boundaries.push_back(target.d[ui - 1][c]);
    std::size_t base = boundaries.empty() ? 0 : oracle::rank(boundaries, target.p);
    auto f = to_rows(mats[ui]);
    for (const auto& z : oracle::kernel(oracle::d_rows(source, i), source.dim(i), source.p)) {
      oracle::Vec img(target.dim(i), mpq_class(0));
      for (std::size_t r = 0; r < img.size(); ++r) {
        for (std::size_t c = 0; c < z.size(); ++c) img[r] += f[r][c] * z[c];
        img[r] = target.norm(img[r]);
      }
      boundaries.push_back(img);
    }
    std::size_t total = boundaries.empty() ? 0 : oracle::rank(boundaries, target.p);
    if (total - base != bs[ui]) return false;
  }
  return true;
}

namespace {

Field random_field(std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Field::rationals();
    case 1: return Field::prime(2);
    case 2: return Field::prime(3);
    default: return Field::prime(5);
  }
}

Matrix random_form(std::size_t m, bool antisymmetric, const Field& f, std::mt19937_64& rng) {
  for (;;) {
    Matrix g = random_matrix(m, m, f, rng);
    for (std::size_t r = 0; r < m; ++r) {
      if (antisymmetric) g(r, r) = Scalar::zero(f);
      for (std::size_t c = 0; c < r; ++c) g(r, c) = antisymmetric ? Scalar::zero(f) - g(c, r) : g(c, r);
    }
    if (oracle::invertible(to_rows(g), f.characteristic())) return g;
  }
}

}  // namespace

std::string perp_trial(std::mt19937_64& rng) {
  const Field f = random_field(rng);
  const bool anti = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  std::size_t m = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 4)(rng)) * (anti ? 2 : 1);
  if (!anti) m += static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 3)(rng));
  const Matrix g = random_form(m, anti, f, rng);
  if (!is_nondegenerate(g)) return "library calls a non-degenerate form degenerate";

  for (;;) {
    auto a = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(m))(rng));
    Matrix inc = random_matrix(a, m, f, rng);
    if (rank(inc) != a) continue;
    // im r is forced to be the orthogonal of im i; it must also complement it.
    Subspace section = kernel(inc * g.transpose());
    std::vector<Vector> both = section.vectors();
    for (std::size_t r = 0; r < a; ++r) both.push_back(inc.row_vector(r));
    if (both.size() != m || !oracle::invertible(to_rows(Matrix::from_rows(both, m, f)), f.characteristic()))
      continue;
    const Matrix& rows = section.basis();
    Matrix cross = rows * g * inc.transpose();
    for (const auto& row : to_rows(cross))
      for (const auto& v : row)
        if (v != 0) return "section not orthogonal to the kernel";
    Matrix restricted = rows * g * rows.transpose();
    bool lib = is_nondegenerate(restricted);
    bool ref = oracle::invertible(to_rows(restricted), f.characteristic());
    if (!lib || !ref) {
      std::ostringstream os;
      os << "restricted form degenerate over " << f.name() << " (m=" << m << ", a=" << a << ")";
      return os.str();
    }
    return {};
  }
}

std::string check_stages(const PipelineResult& r) {
  const int n = r.n;
  const OrientedCdga* before = &r.input;
  for (const auto& stage : r.stages) {
    const int k = stage.data.k;
    auto target = to_oracle(stage.a_hat.alg(), n, stage.a_hat.eps);
    auto source = to_oracle(before->alg(), n, before->eps);
    if (!half_acyclic(target, k)) return "stage " + std::to_string(k) + ": output not half-acyclic";
    if (!quasi_iso(source, target, stage.inclusion.mats, n + 1))
      return "stage " + std::to_string(k) + ": inclusion not a quasi-isomorphism";
    before = &stage.a_hat;
  }
  return {};
}

FuzzOutcome fuzz_trial(const std::string& json_text, std::mt19937_64& rng) {
  FuzzOutcome out;
  oracle::Algebra a = oracle::parse(json_text);
  auto spots = oracle::positions(a);
  if (spots.empty()) return out;
  const auto& pos = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
  const mpq_class old = oracle::read(a, pos);
  mpq_class fresh = old;
  while (a.norm(fresh) == a.norm(old)) fresh = a.norm(mpq_class(std::uniform_int_distribution<int>(-3, 3)(rng)));
  oracle::write(a, pos, fresh);
  const std::string text = oracle::print(a);

  const oracle::Verdict verdict = oracle::check(a);
  out.breaking = !verdict.valid();
  auto doc = parse_algebra(text);
  auto violations = validate(*doc.algebra);
  if (!out.breaking) {
    if (!violations.empty()) out.failure = "valid perturbation flagged as " + violations.front().axiom;
    return out;
  }
  if (violations.empty()) {
    out.failure = "axiom-breaking perturbation not caught";
    return out;
  }
  auto expected = [&](const std::string& axiom) {
    if (axiom == "d^2") return !verdict.d_squared;
    if (axiom == "commutativity") return !verdict.commutativity;
    if (axiom == "leibniz") return !verdict.leibniz;
    if (axiom == "associativity") return !verdict.associativity;
    return false;
  };
  std::size_t families = !verdict.d_squared + !verdict.commutativity + !verdict.leibniz + !verdict.associativity;
  if (violations.size() != families) out.failure = "reported axiom families differ from the oracle";
  for (const auto& v : violations) {
    std::vector<oracle::Witness> w;
    for (const auto& ref : v.witness) w.push_back({ref.degree, ref.index});
    if (!expected(v.axiom) || !oracle::confirms(a, v.axiom, w)) {
      out.failure = "witness for " + v.axiom + " not confirmed";
      break;
    }
  }
  return out;
}

}  // namespace testsupport

#include <doctest.h>

#include <random>

#include "pdmodel/corpus.hpp"
#include "pdmodel/duality.hpp"
#include "pdmodel/errors.hpp"
#include "pdmodel/pipeline.hpp"
#include "properties.hpp"
#include "random_cdga.hpp"

using namespace pdmodel;

namespace {

const Field Q = Field::rationals();

OrientedCdga oriented(const std::string& name) {
  const auto& doc = corpus_entry(name).doc;
  auto a = std::make_shared<const Cdga>(working_algebra(*doc.algebra, doc.n, std::nullopt));
  return {a, derive_orientation(*a, doc.n)};
}

std::vector<std::size_t> dims(const GradedSubspace& g) {
  std::vector<std::size_t> out;
  for (const auto& s : g) out.push_back(s.dim());
  return out;
}

Matrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<Vector> vs;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.push_back(Scalar::from_int(x, Q));
    vs.push_back(v);
  }
  return Matrix::from_rows(vs, rows[0].size(), Q);
}

}  // namespace

TEST_CASE("orientations") {
  OrientedCdga e1 = oriented("sphere7");
  CHECK(e1.eps.eps == Vector{Scalar::one(Q)});
  CHECK(e1.eps(e1.alg().basis_element(7, 0)) == Scalar::one(Q));
  CHECK(e1.eps(e1.alg().unit()).is_zero());
  CHECK(clean(check_orientation(e1.alg(), e1.eps)));

  OrientedCdga e3 = oriented("surgery-8");
  CHECK(e3.eps.eps == Vector{Scalar::one(Q)});

  CdgaBuilder b(Q, 9);
  b.set_basis(4, {"y"});
  CHECK_THROWS_AS(derive_orientation(b.build(), 7), HypothesisError);
}

TEST_CASE("pairing matrices") {
  OrientedCdga e3 = oriented("surgery-8");
  CHECK(pairing_matrix(e3, 4) == mat({{1, 1}, {1, 0}}));
  CHECK(is_nondegenerate(pairing_matrix(e3, 4)));
}

TEST_CASE("orphans of corpus algebras") {
  OrientedCdga e1 = oriented("sphere7");
  CHECK(dims(orphans(e1)) == std::vector<std::size_t>{0, 0, 0, 0, 0, 0, 0, 0, e1.alg().dim(8), e1.alg().dim(9)});

  OrientedCdga e2 = oriented("sphere7-acyclic-junk");
  auto o2 = orphans(e2);
  CHECK(o2[3].dim() == 1);
  CHECK(o2[4].dim() == 1);
  for (int i : {0, 1, 2, 5, 6, 7}) CHECK(o2[static_cast<std::size_t>(i)].dim() == 0);

  OrientedCdga e3 = oriented("surgery-8");
  auto o3 = orphans(e3);
  CHECK(o3[4].dim() == 0);
  CHECK(o3[5].dim() == 1);
  CHECK(o3[5].contains(e3.alg().basis_element(5, 0).coords));
}

TEST_CASE("chain-level Poincare duality") {
  CHECK(clean(is_pd_cdga(oriented("sphere7"))));
  CHECK(clean(is_pd_cdga(oriented("product-3-5"))));
  CHECK_FALSE(clean(is_pd_cdga(oriented("sphere7-acyclic-junk"))));
  CHECK_FALSE(clean(is_pd_cdga(oriented("surgery-8"))));
}

TEST_CASE("quotient by orphans") {
  OrientedCdga e1 = oriented("sphere7");
  PdQuotient q1 = pd_quotient(e1);
  CHECK(q1.quotient.alg().dims() == std::vector<std::size_t>{1, 0, 0, 0, 0, 0, 0, 1, 0, 0});

  OrientedCdga e2 = oriented("sphere7-acyclic-junk");
  PdQuotient q2 = pd_quotient(e2);
  CHECK(q2.quotient.alg().total_dim() == 2);
  CHECK(clean(is_pd_cdga(q2.quotient)));
  CHECK(is_quasi_iso(q2.projection, 8));

  // The surgery instance is not half-acyclic in degree 5, so the quotient loses H^4.
  OrientedCdga e3 = oriented("surgery-8");
  PdQuotient q3 = pd_quotient(e3);
  const Cdga& bar = q3.quotient.alg();
  for (int i = 0; i <= 8; ++i) CHECK(bar.dim(i) == bar.dim(8 - i));
  CHECK_FALSE(is_quasi_iso(q3.projection, 8));
}

TEST_CASE("half-acyclicity") {
  OrientedCdga e2 = oriented("sphere7-acyclic-junk");
  auto o2 = orphans(e2);
  CHECK(half_acyclic_up_to(e2.alg(), o2, 7, 8));

  OrientedCdga e3 = oriented("surgery-8");
  auto o3 = orphans(e3);
  CHECK(half_acyclic_up_to(e3.alg(), o3, 8, 4));  // vacuous below the first half degree
  CHECK_FALSE(half_acyclic_up_to(e3.alg(), o3, 8, 5));
  CHECK(subcomplex_betti(e3.alg(), o3, 5) == 1);
  CHECK(first_half_degree(8) == 5);
  CHECK(first_half_degree(7) == 5);
}

TEST_CASE("orphans and their cohomology agree with the oracle on random algebras") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    Field f = trial % 3 == 0 ? Q : Field::prime(trial % 3 == 1 ? 2 : 5);
    auto inst = testsupport::random_decorated(rng, f);
    if (!clean(check_hypotheses(*inst.algebra, inst.n))) continue;
    auto a = std::make_shared<const Cdga>(working_algebra(*inst.algebra, inst.n, std::nullopt));
    OrientedCdga oa{a, derive_orientation(*a, inst.n)};
    auto ref = testsupport::to_oracle(*a, inst.n, oa.eps);
    auto o = orphans(oa);
    CAPTURE(inst.description);
    for (int i = 0; i <= inst.n + 1; ++i) {
      CAPTURE(i);
      CHECK(subcomplex_betti(*a, o, i) == testsupport::orphan_betti(ref, i));
    }
    for (int k = first_half_degree(inst.n); k <= inst.n + 1; ++k)
      CHECK(half_acyclic_up_to(*a, o, inst.n, k) == testsupport::half_acyclic(ref, k));
  }
}

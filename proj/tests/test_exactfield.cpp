#include <doctest.h>

#include <random>

#include "pdmodel/corpus.hpp"
#include "pdmodel/errors.hpp"
#include "pdmodel/linalg.hpp"
#include "properties.hpp"
#include "random_cdga.hpp"

using namespace pdmodel;

namespace {

Matrix mat(const std::vector<std::vector<long>>& rows, const Field& f = Field::rationals()) {
  std::vector<Vector> vs;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.push_back(Scalar::from_int(x, f));
    vs.push_back(v);
  }
  return Matrix::from_rows(vs, rows.empty() ? 0 : rows[0].size(), f);
}

Vector vec(const std::vector<long>& xs, const Field& f = Field::rationals()) {
  Vector v;
  for (long x : xs) v.push_back(Scalar::from_int(x, f));
  return v;
}

}  // namespace

TEST_CASE("scalars reduce into the prime field") {
  Field f3 = Field::prime(3);
  CHECK(Scalar::from_int(-1, f3) == Scalar::from_int(2, f3));
  CHECK((Scalar::from_int(2, f3) * Scalar::from_int(2, f3)) == Scalar::one(f3));
  CHECK((Scalar::one(f3) / Scalar::from_int(2, f3)) == Scalar::from_int(2, f3));
  CHECK_THROWS_AS(Field::prime(4), ContractError);
  Scalar half = Scalar::one(Field::rationals()) / Scalar::from_int(2, Field::rationals());
  CHECK(half.value() == mpq_class(1, 2));
}

TEST_CASE("rref") {
  auto r = rref(mat({{2, 4}, {1, 2}}));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.reduced == mat({{1, 2}, {0, 0}}));

  auto id = rref(Matrix::identity(4, Field::rationals()));
  CHECK(id.rank == 4);
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2, 3});

  CHECK(rref(mat({{1, 1}, {1, 1}}, Field::prime(2))).rank == 1);
}

TEST_CASE("kernel and image") {
  Field q = Field::rationals();
  Matrix zero(3, 3, q);
  CHECK(kernel(zero).dim() == 3);
  CHECK(image(zero).dim() == 0);

  Matrix m = mat({{1, 0}, {0, 0}});
  CHECK(kernel(m) == Subspace::span({vec({0, 1})}, 2, q));
  CHECK(image(m) == Subspace::span({vec({1, 0})}, 2, q));

  const auto& a = *corpus_entry("surgery-8").doc.algebra;
  Subspace ker4 = kernel(a.d(4));
  CHECK(ker4 == Subspace::span({vec({1, 0})}, 2, q));  // span(h)
}

TEST_CASE("complement picks outer basis vectors greedily") {
  Field q = Field::rationals();
  Subspace e1 = Subspace::span({vec({1, 0})}, 2, q);
  CHECK(complement(e1, Subspace::full(2, q)) == Subspace::span({vec({0, 1})}, 2, q));
  CHECK(complement(e1, e1).dim() == 0);
  CHECK(complement(Subspace::zero(2, q), e1) == e1);
  CHECK_THROWS_AS(complement(Subspace::full(2, q), e1), ContractError);
}

TEST_CASE("solve sets free variables to zero") {
  Field q = Field::rationals();
  Vector b = vec({3, -1, 2});
  CHECK(*solve(Matrix::identity(3, q), b) == b);
  CHECK_FALSE(solve(mat({{1, 0}, {0, 0}}), vec({0, 1})).has_value());

  const auto& a = *corpus_entry("surgery-8").doc.algebra;
  auto x = solve(a.d(4), vec({1}));
  REQUIRE(x.has_value());
  CHECK(*x == vec({0, 1}));  // gamma'
}

TEST_CASE("invert and non-degeneracy") {
  Field q = Field::rationals();
  CHECK(invert(Matrix::identity(3, q)) == Matrix::identity(3, q));
  CHECK(invert(mat({{0, 1}, {1, 0}})) == mat({{0, 1}, {1, 0}}));
  CHECK(invert(mat({{1}})) == mat({{1}}));
  CHECK_THROWS_AS(invert(mat({{1, 1}, {1, 1}})), ContractError);

  CHECK(is_nondegenerate(Matrix::identity(2, q)));
  CHECK_FALSE(is_nondegenerate(Matrix(2, 3, q)));
  CHECK(is_nondegenerate(mat({{1, 1}, {1, 0}})));
  CHECK_FALSE(is_nondegenerate(mat({{1, 1}, {1, 1}}, Field::prime(2))));
}

TEST_CASE("random matrices: rank-nullity, idempotent rref, complements, determinism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Field f = trial % 3 == 0 ? Field::rationals() : Field::prime(trial % 3 == 1 ? 2 : 7);
    auto rows = static_cast<std::size_t>(trial % 5 + 1), cols = static_cast<std::size_t>(trial % 4 + 1);
    Matrix m = testsupport::random_matrix(rows, cols, f, rng);
    auto r = rref(m);
    CHECK(kernel(m).dim() + r.rank == cols);
    CHECK(image(m).dim() == r.rank);
    CHECK(rref(r.reduced).reduced == r.reduced);
    CHECK(rref(m).reduced == r.reduced);
    CHECK(r.rank == oracle::rank(testsupport::to_rows(m), f.characteristic()));
    for (const auto& v : kernel(m).vectors()) CHECK(is_zero(m.apply(v)));

    Subspace outer = image(m);
    Subspace inner = Subspace::span({outer.dim() ? outer.vector(0) : zero_vector(rows, f)}, rows, f);
    Subspace s = complement(inner, outer);
    CHECK(s.intersect(inner).dim() == 0);
    CHECK(s.sum(inner) == outer);
  }
}

TEST_CASE("non-degenerate forms stay non-degenerate along orthogonal sections") {
  std::mt19937_64 rng(2024);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string err = testsupport::perp_trial(rng);
    if (!err.empty()) {
      ++failures;
      MESSAGE(err);
    }
  }
  CHECK(failures == 0);
}

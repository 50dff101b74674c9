#include "pdmodel/corpus.hpp"

#include "pdmodel/errors.hpp"

namespace pdmodel {

namespace {

SparseVec one_at(std::size_t i, const Field& f) { return {{i, Scalar::one(f)}}; }

Orientation top_class(const Cdga& a, int n, std::size_t idx) {
  return Orientation{n, unit_vector(a.dim(n), idx, a.field())};
}

CorpusEntry sphere7(const std::string& name, bool junk) {
  const Field f = Field::rationals();
  CdgaBuilder b(f, 7);
  b.set_basis(7, {"x"});
  if (junk) {
    b.set_basis(3, {"y"});
    b.set_basis(4, {"z"});
    b.set_d(3, 0, {Scalar::one(f)});
  }
  CdgaPtr a = b.build_shared();
  return {name,
          junk ? "7-sphere with an acyclic pair y, dy = z, of orphans" : "cohomology of the 7-sphere, d = 0",
          {a, 7, top_class(*a, 7, 0)}};
}

// Degree 4: h, gamma'; degree 5: alpha = d gamma'; degree 8: x = h^2 = h gamma'.
CorpusEntry surgery8(const std::string& name, const Field& f) {
  CdgaBuilder b(f, 8);
  b.set_basis(4, {"h", "gamma'"});
  b.set_basis(5, {"alpha"});
  b.set_basis(8, {"x"});
  b.set_d(4, 1, {Scalar::one(f)});
  b.set_product(4, 0, 4, 0, one_at(0, f));
  b.set_product(4, 0, 4, 1, one_at(0, f));
  CdgaPtr a = b.build_shared();
  return {name, "8-dimensional instance whose orphan alpha obstructs half-acyclicity in degree 5 (" + f.name() + ")",
          {a, 8, top_class(*a, 8, 0)}};
}

CorpusEntry product35() {
  const Field f = Field::rationals();
  CdgaBuilder b(f, 8);
  b.set_basis(3, {"a"});
  b.set_basis(5, {"b"});
  b.set_basis(8, {"ab"});
  b.set_product(3, 0, 5, 0, one_at(0, f));
  CdgaPtr a = b.build_shared();
  return {"product-3-5", "cohomology of S^3 x S^5, d = 0", {a, 8, top_class(*a, 8, 0)}};
}

// S^3 x S^5 decorated with acyclic pairs q -> beta (3 -> 4) and p -> alpha (5 -> 6) where p q = x.
// The degree-6 orphan alpha gives an obstruction at the even stage 6.
CorpusEntry decorated35(const std::string& name, const Field& f) {
  CdgaBuilder b(f, 8);
  b.set_basis(3, {"a", "q"});
  b.set_basis(4, {"beta"});
  b.set_basis(5, {"b", "p"});
  b.set_basis(6, {"alpha"});
  b.set_basis(8, {"x"});
  b.set_d(3, 1, {Scalar::one(f)});
  b.set_d(5, 1, {Scalar::one(f)});
  b.set_product(3, 0, 5, 0, one_at(0, f));
  b.set_product(3, 1, 5, 1, one_at(0, f));
  CdgaPtr a = b.build_shared();
  return {name, "S^3 x S^5 with orphan obstructions in degrees 4 and 6 (" + f.name() + ")", {a, 8, top_class(*a, 8, 0)}};
}

// 10-sphere with g1, g2 in degree 5 pairing to the top class and bounding orphans a1, a2 in degree 6.
// The first stage is the middle one and is even.
CorpusEntry middle10(const std::string& name, const Field& f) {
  CdgaBuilder b(f, 10);
  b.set_basis(5, {"g1", "g2"});
  b.set_basis(6, {"a1", "a2"});
  b.set_basis(10, {"x"});
  b.set_d(5, 0, {Scalar::one(f), Scalar::zero(f)});
  b.set_d(5, 1, {Scalar::zero(f), Scalar::one(f)});
  b.set_product(5, 0, 5, 1, one_at(0, f));
  CdgaPtr a = b.build_shared();
  return {name, "10-dimensional instance with a rank-2 obstruction in the middle stage (" + f.name() + ")",
          {a, 10, top_class(*a, 10, 0)}};
}

CorpusEntry cp2() {
  const Field f = Field::rationals();
  CdgaBuilder b(f, 4);
  b.set_basis(2, {"x"});
  b.set_basis(4, {"x^2"});
  b.set_product(2, 0, 2, 0, one_at(0, f));
  CdgaPtr a = b.build_shared();
  return {"cp2", "truncated polynomial algebra on a degree-2 class, x^3 = 0 (n = 4)", {a, 4, top_class(*a, 4, 0)}};
}

// The same shape as cp2 in dimension 6 with a contractible pair y -> z (3 -> 4) of orphans.
CorpusEntry cp3_junk() {
  const Field f = Field::rationals();
  CdgaBuilder b(f, 6);
  b.set_basis(2, {"x"});
  b.set_basis(3, {"y"});
  b.set_basis(4, {"x^2", "z"});
  b.set_basis(6, {"x^3"});
  b.set_d(3, 0, {Scalar::zero(f), Scalar::one(f)});
  b.set_product(2, 0, 2, 0, one_at(0, f));
  b.set_product(2, 0, 4, 0, one_at(0, f));
  CdgaPtr a = b.build_shared();
  return {"cp3-junk", "truncated polynomial algebra on a degree-2 class with an acyclic orphan pair (n = 6)",
          {a, 6, top_class(*a, 6, 0)}};
}

std::vector<CorpusEntry> build_all() {
  std::vector<CorpusEntry> all;
  all.push_back(sphere7("sphere7", false));
  all.push_back(sphere7("sphere7-acyclic-junk", true));
  all.push_back(surgery8("surgery-8", Field::rationals()));
  all.push_back(surgery8("surgery-8-f2", Field::prime(2)));
  all.push_back(product35());
  all.push_back(decorated35("decorated-3-5", Field::rationals()));
  all.push_back(decorated35("decorated-3-5-f2", Field::prime(2)));
  all.push_back(decorated35("decorated-3-5-f3", Field::prime(3)));
  all.push_back(middle10("middle-10", Field::rationals()));
  all.push_back(middle10("middle-10-f3", Field::prime(3)));
  all.push_back(cp2());
  all.push_back(cp3_junk());
  return all;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> all = build_all();
  return all;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw ContractError("unknown corpus instance \"" + name + "\"");
}

}  // namespace pdmodel

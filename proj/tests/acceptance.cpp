// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "pdmodel/algebra_io.hpp"
#include "pdmodel/corpus.hpp"
#include "pdmodel/pipeline.hpp"
#include "pdmodel/surgery.hpp"
#include "properties.hpp"
#include "random_cdga.hpp"

using namespace pdmodel;
namespace fs = std::filesystem;

namespace {

const Field Q = Field::rationals();

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "pdmodel_acceptance";
  fs::create_directories(dir);
  return dir;
}

int cli(const std::string& args) {
  std::string cmd = std::string(PDMODEL_BINARY) + " " + args + " > " + (scratch() / "stdout").string() + " 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

OrientedCdga oriented(const AlgebraDocument& doc) {
  auto a = std::make_shared<const Cdga>(working_algebra(*doc.algebra, doc.n, std::nullopt));
  return {a, derive_orientation(*a, doc.n)};
}

bool is_permutation(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    int ones = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) == Scalar::one(m.field()))
        ++ones;
      else if (!m(r, c).is_zero())
        return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

Outcome corpus_runs() {
  Outcome o;
  double slowest = 0;
  int count = 0;
  for (const char* name : {"sphere7", "sphere7-acyclic-junk", "surgery-8", "surgery-8-f2", "product-3-5",
                           "decorated-3-5", "decorated-3-5-f2", "decorated-3-5-f3", "middle-10", "middle-10-f3"}) {
    const auto& doc = corpus_entry(name).doc;
    auto start = std::chrono::steady_clock::now();
    int code = cli(std::string("run corpus:") + name);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest = std::max(slowest, secs);
    if (code != 0) o.fail(std::string(name) + ": run exited " + std::to_string(code));
    if (secs >= 10) o.fail(std::string(name) + ": took " + std::to_string(secs) + " s");
    PipelineResult r = run(*doc.algebra, doc.n);
    if (!clean(is_pd_cdga(r.output))) o.fail(std::string(name) + ": output not PD");
    auto in = testsupport::to_oracle(r.input.alg(), r.n, r.input.eps);
    auto out = testsupport::to_oracle(r.output.alg(), r.n, r.output.eps);
    if (!oracle::check(out).valid()) o.fail(std::string(name) + ": output fails the oracle axioms");
    if (!r.composite || !is_quasi_iso(*r.composite, r.n) || !testsupport::quasi_iso(in, out, r.composite->mats, r.n))
      o.fail(std::string(name) + ": composite not a quasi-isomorphism");
    ++count;
  }
  std::ostringstream os;
  os << count << " instances, slowest " << slowest << " s";
  if (o.pass) o.detail = os.str();
  return o;
}

Outcome surgery_values() {
  Outcome o;
  OrientedCdga oa = oriented(corpus_entry("surgery-8").doc);
  const Cdga& a = oa.alg();
  ExtensionResult s = surgery_step(oa, 5);
  if (s.data.l() != 1) o.fail("l = " + std::to_string(s.data.l()));
  if (s.data.l() == 1) {
    if (!(s.data.alphas[0] == a.basis_element(5, 0))) o.fail("alpha not selected");
    Element expected{4, {Scalar::from_int(-1, Q), Scalar::one(Q)}};
    if (!(s.data.gammas[0] == expected)) o.fail("gamma != gamma' - h");
    Element c;
    for (std::size_t g = 0; g < s.generators.size(); ++g)
      if (s.generators[g].role == GeneratorInfo::Role::C) c = s.ext.generators[g];
    if (!(s.a_hat.eps(s.a_hat.alg().mul(c, c)) == Scalar::one(Q))) o.fail("eps_hat(c c) != 1");
  }
  auto ref = testsupport::to_oracle(s.a_hat.alg(), 8, s.a_hat.eps);
  if (subcomplex_betti(s.a_hat.alg(), s.orphans_hat, 5) != 0 || testsupport::orphan_betti(ref, 5) != 0)
    o.fail("H^5 of the orphans after the stage is nonzero");
  if (o.pass) o.detail = "l = 1, gamma = gamma' - h, eps_hat(c c) = 1, H^5 = 0";
  return o;
}

Outcome projection_quasi_iso() {
  Outcome o;
  int half = 0;
  auto check = [&](const std::string& label, const OrientedCdga& oa) {
    GradedSubspace orph = orphans(oa);
    if (!half_acyclic_up_to(oa.alg(), orph, oa.n(), oa.n() + 1)) return;
    ++half;
    PdQuotient q = pd_quotient(oa, orph);
    if (!is_quasi_iso(q.projection, oa.n() + 1)) o.fail(label + ": projection not a quasi-isomorphism");
  };
  for (const auto& e : corpus()) {
    if (e.doc.n < 7) continue;
    OrientedCdga input = oriented(e.doc);
    check(e.name + " input", input);
    PipelineResult r = run(*e.doc.algebra, e.doc.n);
    check(e.name + " final stage", r.stages.back().a_hat);
  }
  OrientedCdga e3 = oriented(corpus_entry("surgery-8").doc);
  GradedSubspace orph = orphans(e3);
  if (half_acyclic_up_to(e3.alg(), orph, 8, 5)) o.fail("surgery-8 input reported half-acyclic at 5");
  PdQuotient q = pd_quotient(e3, orph);
  std::size_t before = cohomology(e3.alg()).betti(4), after = cohomology(q.quotient.alg()).betti(4);
  if (before == after) o.fail("H^4 ranks agree on the surgery-8 quotient");
  if (is_quasi_iso(q.projection, 9)) o.fail("surgery-8 projection reported a quasi-isomorphism");
  std::ostringstream os;
  os << half << " half-acyclic algebras, surgery-8 H^4 " << before << " -> " << after;
  if (o.pass) o.detail = os.str();
  return o;
}

Outcome random_stages() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  const Field fields[] = {Q, Field::prime(2), Field::prime(3), Field::prime(5)};
  int accepted = 0, tried = 0, fired = 0, stages = 0;
  while (accepted < 120 && tried < 1000) {
    ++tried;
    auto inst = testsupport::random_decorated(rng, fields[tried % 4]);
    if (!clean(check_hypotheses(*inst.algebra, inst.n))) continue;
    ++accepted;
    try {
      PipelineResult r = run(*inst.algebra, inst.n);
      std::string err = testsupport::check_stages(r);
      if (!err.empty()) o.fail(inst.description + ": " + err);
      for (const auto& s : r.stages) {
        ++stages;
        if (s.data.l() > 0) ++fired;
      }
    } catch (const std::exception& ex) {
      o.fail(inst.description + ": " + ex.what());
    }
  }
  if (accepted < 100) o.fail("only " + std::to_string(accepted) + " instances accepted");
  std::ostringstream os;
  os << accepted << " instances, " << stages << " stages, " << fired << " with surgery";
  if (o.pass) o.detail = os.str();
  return o;
}

Outcome prime_powers() {
  Outcome o;
  bool f2 = false, f3 = false;
  int with_uv = 0;
  for (const char* name : {"surgery-8-f2", "decorated-3-5-f2", "decorated-3-5-f3", "middle-10-f3"}) {
    const auto& doc = corpus_entry(name).doc;
    PipelineResult r = run(*doc.algebra, doc.n);
    for (const auto& s : r.stages) {
      if (s.which != SurgeryCase::PrimePowers) continue;
      if (s.data.k % 2 != 0) o.fail(std::string(name) + ": prime-power case at odd k");
      (doc.algebra->field().characteristic() == 2 ? f2 : f3) = true;
      bool uv = false;
      for (const auto& g : s.generators) uv = uv || g.role == GeneratorInfo::Role::U || g.role == GeneratorInfo::Role::V;
      with_uv += uv;
      auto ref = testsupport::to_oracle(s.a_hat.alg(), r.n, s.a_hat.eps);
      if (!oracle::check(ref).d_squared) o.fail(std::string(name) + ": d^2 != 0 after stage " + std::to_string(s.data.k));
    }
    if (!clean(is_pd_cdga(r.output))) o.fail(std::string(name) + ": output not PD");
  }
  if (!f2) o.fail("no prime-power stage over F_2");
  if (!f3) o.fail("no prime-power stage over F_3");
  if (with_uv == 0) o.fail("no u or v generator instantiated");
  if (o.pass) o.detail = "F_2 and F_3 covered, " + std::to_string(with_uv) + " stages with u/v";
  return o;
}

Outcome perp() {
  Outcome o;
  std::mt19937_64 rng(7);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    std::string err = testsupport::perp_trial(rng);
    if (!err.empty()) {
      ++failures;
      o.fail(err);
    }
  }
  if (o.pass) o.detail = "1000 trials, 0 failures";
  else o.detail += " (" + std::to_string(failures) + " failures)";
  return o;
}

Outcome idempotence() {
  Outcome o;
  int count = 0;
  for (const auto& e : corpus()) {
    if (e.doc.n < 7) continue;
    PipelineResult first = run(*e.doc.algebra, e.doc.n);
    PipelineResult second = run(first.output.alg(), e.doc.n, {first.output.eps, std::nullopt, true});
    if (second.output.alg().dims() != first.output.alg().dims()) o.fail(e.name + ": dimension table changed");
    for (const auto& m : second.composite->mats)
      if (!is_permutation(m)) o.fail(e.name + ": composite is not a basis permutation");
    GradedSubspace orph = orphans(first.output);
    for (int i = 0; i <= e.doc.n; ++i)
      if (orph[static_cast<std::size_t>(i)].dim() != 0) o.fail(e.name + ": nonzero orphans in degree " + std::to_string(i));
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " outputs";
  return o;
}

Outcome formal() {
  Outcome o;
  for (const char* name : {"cp2", "cp3-junk"}) {
    const auto& doc = corpus_entry(name).doc;
    PipelineResult r = formal_model(*doc.algebra, doc.n);
    CohomologyRing h = cohomology(truncate(*doc.algebra, doc.n + 1));
    for (int i = 0; i <= doc.n; ++i)
      if (r.output.alg().dim(i) != h.betti(i)) o.fail(std::string(name) + ": output is not H");
    for (int i = 0; i <= r.output.alg().top(); ++i)
      if (!r.output.alg().d(i).is_zero()) o.fail(std::string(name) + ": nonzero differential");
    if (!clean(is_pd_cdga(r.output))) o.fail(std::string(name) + ": output not PD");
    if (!r.formal_shortcut || r.composite || r.note.find("no explicit map") == std::string::npos)
      o.fail(std::string(name) + ": missing no-explicit-map flag");
  }
  if (o.pass) o.detail = "cp2, cp3-junk";
  return o;
}

Outcome fuzz() {
  Outcome o;
  std::mt19937_64 rng(31337);
  std::vector<std::string> files;
  for (const auto& e : corpus()) files.push_back(print_algebra(e.doc));
  int breaking = 0, benign = 0, via_cli = 0;
  while (breaking < 500) {
    const std::string& text = files[std::uniform_int_distribution<std::size_t>(0, files.size() - 1)(rng)];
    testsupport::FuzzOutcome f = testsupport::fuzz_trial(text, rng);
    if (!f.failure.empty()) o.fail(f.failure);
    if (!f.breaking) {
      ++benign;
      continue;
    }
    if (++breaking % 25 == 0) {
      // Also push a broken copy of the same file through the verify command.
      oracle::Algebra a = oracle::parse(text);
      for (const auto& pos : oracle::positions(a)) {
        oracle::Algebra b = a;
        oracle::write(b, pos, oracle::read(b, pos) + 1);
        if (oracle::check(b).valid()) continue;
        if (cli("verify " + write("fuzz.json", oracle::print(b)).string()) != 2) o.fail("verify accepted a broken file");
        ++via_cli;
        break;
      }
    }
  }
  std::ostringstream os;
  os << breaking << " axiom-breaking trials caught with confirmed witnesses (" << benign << " benign skipped, " << via_cli
     << " through verify)";
  if (o.pass) o.detail = os.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"corpus runs produce verified Poincare duality models", corpus_runs},
      {"surgery values on the 8-dimensional instance", surgery_values},
      {"orphan projection is a quasi-isomorphism exactly when expected", projection_quasi_iso},
      {"random algebras: every stage half-acyclic and quasi-isomorphic", random_stages},
      {"prime characteristic with even k", prime_powers},
      {"non-degenerate form restricted along an orthogonal section", perp},
      {"idempotence", idempotence},
      {"formal shortcut for n <= 6", formal},
      {"single-entry axiom fuzzing", fuzz},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

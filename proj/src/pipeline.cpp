#include "pdmodel/pipeline.hpp"

#include <algorithm>

#include "pdmodel/errors.hpp"

namespace pdmodel {

namespace {

Report hypothesis_failures_except_dimension(const Report& r) {
  Report out;
  for (const auto& d : r)
    if (d.check != kDimensionCheck) out.push_back(d);
  return out;
}

Orientation choose_orientation(const Cdga& a, int n, const RunOptions& opts) {
  if (!opts.orientation) return derive_orientation(a, n);
  Orientation o = *opts.orientation;
  if (o.n != n) throw HypothesisError("supplied orientation has dimension " + std::to_string(o.n));
  Report r = check_orientation(a, o);
  if (!r.empty()) throw HypothesisError("supplied orientation rejected:\n" + to_string(r));
  return o;
}

void require_hypotheses(const Cdga& a, int n, bool allow_small) {
  Report r = check_hypotheses(a, n);
  if (allow_small) r = hypothesis_failures_except_dimension(r);
  if (!r.empty()) throw HypothesisError("hypotheses not satisfied:\n" + to_string(r));
}

// Diagnostics shared by run's final checks and verify.
Report check_output(const PipelineResult& r) {
  Report out;
  const Cdga& b = r.output.alg();
  for (const auto& v : validate(b)) out.push_back({"output CDGA", describe(v)});
  for (const auto& d : check_orientation(b, r.output.eps)) out.push_back({"output orientation", d.message});
  for (const auto& d : is_pd_cdga(r.output)) out.push_back({"output Poincaré duality", d.check + ": " + d.message});
  if (!out.empty()) return out;

  const int n = r.n;
  CohomologyRing hs(r.input.alg());
  CohomologyRing ht(b);
  for (int i = 0; i <= n; ++i)
    if (hs.betti(i) != ht.betti(i))
      out.push_back({"betti numbers", "degree " + std::to_string(i) + ": input " + std::to_string(hs.betti(i)) +
                                          ", output " + std::to_string(ht.betti(i))});
  if (!r.composite) return out;

  const ChainAlgebraMap& f = *r.composite;
  for (const auto& v : check_map(f)) out.push_back({"composite map", describe(v)});
  if (!out.empty()) return out;
  if (!is_quasi_iso(f, n, hs, ht)) out.push_back({"quasi-isomorphism", "composite is not bijective on cohomology up to degree n"});
  const Cdga& a = r.input.alg();
  for (std::size_t c = 0; c < a.dim(n); ++c)
    if (!(r.output.eps(f.apply(a.basis_element(n, c))) == r.input.eps.eps[c])) {
      out.push_back({"fundamental class", "output orientation composed with the map differs from eps on " + a.names(n)[c]});
      break;
    }
  return out;
}

}  // namespace

Cdga working_algebra(const Cdga& a, int n, std::optional<int> max_degree) {
  int bound = max_degree.value_or(n + 2);
  if (bound < n + 2) throw ContractError("working truncation must be at least n+2 = " + std::to_string(n + 2));
  return truncate(a, bound);
}

Report check_hypotheses(const Cdga& a, int n) {
  Report r;
  if (n < 0) {
    r.push_back({"dimension", "n must be non-negative"});
    return r;
  }
  auto bad = validate(a);
  for (const auto& v : bad) r.push_back({"valid CDGA", describe(v)});
  if (!bad.empty()) return r;
  if (a.dim(0) != 1) r.push_back({"A^0 = k", "A^0 has dimension " + std::to_string(a.dim(0))});
  if (a.dim(1) != 0) r.push_back({"A^1 = 0", "A^1 has dimension " + std::to_string(a.dim(1)) + "; a minimal-model normalization is required"});
  if (a.top() >= 3 && !a.d(2).is_zero()) r.push_back({"A^2 ⊂ ker d", "d is nonzero on A^2; a minimal-model normalization is required"});
  // one degree of zero padding past the stored range makes the top cohomology computable
  Cdga full = truncate(a, std::max(a.top(), n + 1) + 1);
  for (const auto& d : check_H_PD(cohomology(full), n)) r.push_back({"H is a Poincaré duality algebra", d.check + ": " + d.message});
  if (n < 7) r.push_back({kDimensionCheck, "n = " + std::to_string(n) + "; the surgery construction needs n >= 7"});
  return r;
}

PipelineResult run(const Cdga& a, int n, const RunOptions& opts) {
  require_hypotheses(a, n, false);
  PipelineResult res;
  res.n = n;
  CdgaPtr work = std::make_shared<const Cdga>(working_algebra(a, n, opts.max_degree));
  res.input = OrientedCdga{work, choose_orientation(*work, n, opts)};

  OrientedCdga cur = res.input;
  ChainAlgebraMap comp = identity_map(work);
  for (int k = first_half_degree(n); k <= n + 1; ++k) {
    ExtensionResult step = surgery_step(cur, k, opts.stage_checks);
    if (step.which != SurgeryCase::Skipped) comp = compose(step.inclusion, comp);
    cur = step.a_hat;
    if (opts.stage_checks && !half_acyclic_up_to(cur.alg(), step.orphans_hat, n, k))
      throw InternalError("stage " + std::to_string(k) + ": orphans are not k-half-acyclic");
    res.stages.push_back(std::move(step));
  }

  PdQuotient q = pd_quotient(cur);
  res.composite = compose(q.projection, comp);
  res.output = q.quotient;

  Report final_checks = check_output(res);
  if (!final_checks.empty()) throw InternalError("final verification failed:\n" + to_string(final_checks));
  CohomologyRing h(*work);
  if (h.betti(n + 1) != 0) throw InternalError("H^{n+1} of the input is nonzero");
  res.confirmed = {"output is a valid CDGA",
                   "output is a differential Poincaré duality algebra",
                   "composite is a CDGA map and a quasi-isomorphism up to degree " + std::to_string(n),
                   "output orientation pulls back to eps",
                   "H^" + std::to_string(n + 1) + " of the input vanishes"};
  return res;
}

PipelineResult formal_model(const Cdga& a, int n, const RunOptions& opts) {
  require_hypotheses(a, n, true);
  if (n > 6) throw HypothesisError("the formal shortcut applies only for n <= 6");
  PipelineResult res;
  res.n = n;
  CdgaPtr work = std::make_shared<const Cdga>(working_algebra(a, n, opts.max_degree));
  res.input = OrientedCdga{work, choose_orientation(*work, n, opts)};
  CohomologyRing h(*work);

  const int top = work->top();
  CdgaBuilder b(a.field(), top);
  for (int i = 1; i <= n; ++i) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < h.betti(i); ++c) names.push_back("[" + std::to_string(i) + "." + std::to_string(c + 1) + "]");
    b.set_basis(i, std::move(names));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i; i + j <= n; ++j)
      for (std::size_t x = 0; x < h.betti(i); ++x)
        for (std::size_t y = 0; y < h.betti(j); ++y) b.set_product(i, x, j, y, h.product(i, x, j, y));
  CdgaPtr out = b.build_shared();
  Orientation eps{n, zero_vector(h.betti(n), a.field())};
  eps.eps[0] = res.input.eps(h.rep(n, 0));
  res.output = OrientedCdga{out, std::move(eps)};
  res.formal_shortcut = true;
  res.note = "quasi-isomorphism guaranteed by formality in dimension <= 6; no explicit map emitted";

  Report final_checks = check_output(res);
  if (!final_checks.empty()) throw InternalError("final verification failed:\n" + to_string(final_checks));
  res.confirmed = {"output is a valid CDGA", "output is a differential Poincaré duality algebra",
                   "output cohomology matches the input in degrees 0.." + std::to_string(n)};
  return res;
}

Report verify(const PipelineResult& r) {
  Report out;
  if (!r.input.algebra || !r.output.algebra) {
    out.push_back({"result", "missing algebra"});
    return out;
  }
  for (const auto& v : validate(r.input.alg())) out.push_back({"input CDGA", describe(v)});
  for (const auto& d : check_orientation(r.input.alg(), r.input.eps)) out.push_back({"input orientation", d.message});
  if (!r.formal_shortcut && !r.composite) out.push_back({"composite map", "missing"});
  if (!out.empty()) return out;
  return check_output(r);
}

}  // namespace pdmodel

#include "pdmodel/surgery.hpp"

#include "pdmodel/errors.hpp"

namespace pdmodel {

namespace {

std::string stage_tag(int k) { return "stage " + std::to_string(k) + ": "; }

std::vector<Element> as_elements(const Subspace& s, int deg) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < s.dim(); ++i) out.push_back(Element{deg, s.vector(i)});
  return out;
}

Subspace exact_in(const Cdga& a, int deg) {
  if (deg <= 0) return Subspace::zero(a.dim(deg), a.field());
  return image(a.d(deg - 1));
}

Subspace cocycles_in(const Cdga& a, int deg) { return kernel(a.d(deg)); }

// Splits A^deg = T ⊕ dA: returns the dA component of a vector.
class ExactPart {
 public:
  ExactPart(const Cdga& a, const Subspace& t, int deg) : field_(a.field()), dim_(a.dim(deg)) {
    exact_ = exact_in(a, deg);
    std::vector<Vector> cols = t.vectors();
    tdim_ = cols.size();
    for (auto& v : exact_.vectors()) cols.push_back(std::move(v));
    if (cols.size() != dim_) throw InternalError("T and dA do not span A^" + std::to_string(deg));
    inv_ = invert(Matrix::from_rows(cols, dim_, field_).transpose());
  }

  Vector operator()(const Vector& x) const {
    Vector coords = inv_.apply(x);
    Vector out = zero_vector(dim_, field_);
    for (std::size_t i = tdim_; i < coords.size(); ++i) axpy(out, coords[i], exact_.basis().row(i - tdim_));
    return out;
  }

 private:
  Field field_;
  std::size_t dim_;
  std::size_t tdim_ = 0;
  Subspace exact_;
  Matrix inv_;
};

}  // namespace

SurgeryCase surgery_case(const Field& f, int k) {
  return f.is_rational() || k % 2 != 0 ? SurgeryCase::Exterior : SurgeryCase::PrimePowers;
}

std::vector<Element> select_alphas(const OrientedCdga& oa, const GradedSubspace& o, int k) {
  const Cdga& a = oa.alg();
  if (k < 1 || k >= a.top()) throw ContractError("select_alphas: degree out of range");
  Subspace closed = o[static_cast<std::size_t>(k)].intersect(cocycles_in(a, k));
  Subspace bounded = o[static_cast<std::size_t>(k - 1)].mapped(a.d(k - 1));
  return as_elements(complement(bounded, closed), k);
}

std::vector<Element> bound_alphas(const OrientedCdga& oa, const std::vector<Element>& alphas) {
  const Cdga& a = oa.alg();
  std::vector<Element> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    int deg = alphas[i].degree;
    auto x = solve(a.d(deg - 1), alphas[i].coords);
    if (!x) throw HypothesisError("orphan cocycle " + std::to_string(i + 1) + " in degree " + std::to_string(deg) + " is not exact");
    out.push_back(Element{deg - 1, std::move(*x)});
  }
  return out;
}

DualCocycles dual_cocycles(const OrientedCdga& oa, const CohomologyRing& h) {
  const Cdga& a = oa.alg();
  const int n = oa.n();
  DualCocycles out;
  for (int i = 0; i <= n; ++i) {
    // m[b][a] = eps(R_{n-i}[b] * R_i[a]); the dual of R_i[a] is row a of m^{-1} in the R_{n-i} basis
    const std::size_t bi = h.betti(i), bj = h.betti(n - i);
    Matrix m(bj, bi, a.field());
    for (std::size_t b = 0; b < bj; ++b)
      for (std::size_t c = 0; c < bi; ++c) m(b, c) = oa.eps(a.mul(h.rep(n - i, b), h.rep(i, c)));
    Matrix inv;
    try {
      inv = invert(m);
    } catch (const ContractError&) {
      throw InternalError("cohomology pairing in degree " + std::to_string(i) + " is singular");
    }
    for (std::size_t c = 0; c < bi; ++c) {
      out.h.push_back(h.rep(i, c));
      Element star = a.zero(n - i);
      for (std::size_t b = 0; b < bj; ++b) axpy(star.coords, inv(c, b), h.reps(n - i).row(b));
      out.h_star.push_back(std::move(star));
    }
  }
  for (std::size_t j = 0; j < out.h.size(); ++j)
    for (std::size_t i = 0; i < out.h.size(); ++i) {
      if (out.h_star[j].degree + out.h[i].degree != n) continue;
      Scalar v = oa.eps(a.mul(out.h_star[j], out.h[i]));
      if (!(i == j ? v.is_one() : v.is_zero())) throw InternalError("dual cocycles fail the Kronecker property");
    }
  return out;
}

std::vector<Element> correct_gammas(const OrientedCdga& oa, const std::vector<Element>& gamma_primes,
                                    const DualCocycles& duals) {
  const Cdga& a = oa.alg();
  std::vector<Element> out;
  for (const auto& gp : gamma_primes) {
    Element g = gp;
    for (std::size_t j = 0; j < duals.h.size(); ++j) {
      if (gp.degree + duals.h[j].degree != oa.n()) continue;
      Scalar c = oa.eps(a.mul(gp, duals.h[j]));
      if (!c.is_zero()) axpy(g.coords, -c, duals.h_star[j].coords);
    }
    out.push_back(std::move(g));
  }
  return out;
}

Complements choose_complements(const OrientedCdga& oa, const GradedSubspace& o, const GradedSubspace& gamma_space) {
  const Cdga& a = oa.alg();
  Complements out;
  for (int deg = 0; deg <= a.top(); ++deg) {
    const auto i = static_cast<std::size_t>(deg);
    Subspace exact = exact_in(a, deg);
    Subspace z = complement(o[i].intersect(exact), o[i]);
    const Subspace& g = gamma_space[i];
    Subspace zg = z.sum(g);
    Subspace inner = zg.sum(exact);
    const std::string where = " in degree " + std::to_string(deg);
    if (zg.dim() != z.dim() + g.dim()) throw InternalError("Z ∩ Gamma != 0" + where);
    if (inner.dim() != zg.dim() + exact.dim()) throw InternalError("(Z + Gamma) ∩ dA != 0" + where);
    if (!(z.mapped(a.d(deg)) == o[i].mapped(a.d(deg)))) throw InternalError("d(Z) != d(O)" + where);
    Subspace u = complement(inner, Subspace::full(a.dim(deg), a.field()));
    Subspace t = zg.sum(u);
    if (t.dim() + exact.dim() != a.dim(deg) || t.sum(exact).dim() != a.dim(deg))
      throw InternalError("T is not a complement of dA" + where);
    out.Z.push_back(std::move(z));
    out.U.push_back(std::move(u));
    out.T.push_back(std::move(t));
  }
  return out;
}

Extension build_extension(const OrientedCdga& oa, const SurgeryData& data, SurgeryCase which,
                          std::vector<GeneratorInfo>& generators) {
  const Cdga& a = oa.alg();
  const Field& f = a.field();
  const int k = data.k;
  const int top = a.top();
  const std::size_t l = data.l();
  const Scalar one = Scalar::one(f);
  const std::string suffix = std::to_string(k) + "_";

  std::vector<GeneratorSpec> specs;
  generators.clear();
  auto add = [&](GeneratorInfo::Role role, std::size_t i, const std::string& stem, int deg, Expr d_image) {
    std::string name = stem + suffix + std::to_string(i + 1);
    generators.push_back({role, i, name, deg});
    specs.push_back({name, deg, std::move(d_image)});
    return specs.size() - 1;
  };

  std::vector<std::size_t> c_idx, w_idx;
  for (std::size_t i = 0; i < l; ++i)
    c_idx.push_back(add(GeneratorInfo::Role::C, i, "c", k - 1, {{one, data.alphas[i], {}}}));
  for (std::size_t i = 0; i < l; ++i)
    w_idx.push_back(add(GeneratorInfo::Role::W, i, "w", k - 2,
                        {{one, a.unit(), {{c_idx[i], 1}}}, {-one, data.gammas[i], {}}}));
  if (which == SurgeryCase::PrimePowers) {
    const int p = static_cast<int>(f.characteristic());
    const int du = p * (k - 2);
    for (std::size_t i = 0; i < l; ++i) {
      if (du - 1 > top) continue;
      add(GeneratorInfo::Role::U, i, "u", du - 1, {{one, a.unit(), {{w_idx[i], p}}}});
      if (du > top) continue;
      add(GeneratorInfo::Role::V, i, "v", du,
          {{one, a.unit(), {{c_idx[i], 1}, {w_idx[i], p - 1}}}, {-one, data.gammas[i], {{w_idx[i], p - 1}}}});
    }
  }
  return free_extension(oa.algebra, specs);
}

Orientation build_orientation_hat(const Extension& ext, const OrientedCdga& oa, const SurgeryData& data,
                                  const std::vector<GeneratorInfo>& generators) {
  const Cdga& a = oa.alg();
  const Cdga& ah = *ext.algebra;
  const Field& f = a.field();
  const int n = oa.n();
  const int k = data.k;
  const int xi_deg = n - k + 2;  // degree of xi in w_i * xi

  Orientation out{n, zero_vector(ah.dim(n), f)};
  std::optional<ExactPart> split;
  if (xi_deg >= 1 && xi_deg <= a.top()) split.emplace(a, data.complements.T[static_cast<std::size_t>(xi_deg)], xi_deg);

  const auto& monos = ext.monomials[static_cast<std::size_t>(n)];
  for (std::size_t idx = 0; idx < monos.size(); ++idx) {
    const auto& mono = monos[idx];
    std::vector<std::size_t> present;
    int total = 0;
    for (std::size_t g = 0; g < mono.exponents.size(); ++g)
      if (mono.exponents[g] > 0) {
        present.push_back(g);
        total += mono.exponents[g];
      }
    Scalar value = Scalar::zero(f);
    if (total == 0) {
      value = oa.eps.eps[mono.base.index];
    } else if (total == 1 && generators[present[0]].role == GeneratorInfo::Role::W) {
      // the monomial is xi * w_i; on w_i xi = w_i (t + d xi') the value is (-1)^k eps(gamma_i xi')
      const std::size_t i = generators[present[0]].index;
      Element xi = a.basis_element(mono.base.degree, mono.base.index);
      auto pre = solve(a.d(xi_deg - 1), (*split)(xi.coords));
      if (!pre) throw InternalError("exact part of a degree-" + std::to_string(xi_deg) + " element has no preimage");
      Scalar v = oa.eps(a.mul(data.gammas[i], Element{xi_deg - 1, std::move(*pre)}));
      int sign = koszul_sign(k) * koszul_sign(static_cast<long>(xi_deg) * (k - 2));
      value = sign == 1 ? v : -v;
    } else if (total == 2 && mono.base.degree == 0) {
      bool all_c = true;
      for (std::size_t g : present) all_c = all_c && generators[g].role == GeneratorInfo::Role::C;
      if (all_c) {
        const std::size_t i = generators[present.front()].index;
        const std::size_t j = generators[present.back()].index;
        value = -oa.eps(a.mul(data.gammas[i], data.gammas[j]));
      }
    }
    out.eps[idx] = value;
  }
  return out;
}

ExtensionResult surgery_step(const OrientedCdga& oa, int k, bool checks) {
  const Cdga& a = oa.alg();
  const Field& f = a.field();
  const int n = oa.n();
  if (k < first_half_degree(n) || k > n + 1) throw ContractError("surgery_step: stage degree out of range");
  if (a.top() < n + 2) throw ContractError("surgery_step: algebra must be stored up to degree n+2");
  const std::string tag = stage_tag(k);

  ExtensionResult res;
  GradedSubspace o = orphans(oa);
  res.data.k = k;
  res.data.alphas = select_alphas(oa, o, k);

  if (res.data.l() == 0) {
    res.a_hat = oa;
    res.inclusion = identity_map(oa.algebra);
    res.ext = free_extension(oa.algebra, {});
    res.orphans_hat = o;
    if (checks) {
      if (subcomplex_betti(a, o, k) != 0) throw InternalError(tag + "H^k(O) != 0 with no obstruction selected");
      res.confirmed.push_back("H^" + std::to_string(k) + "(O) = 0, no generators needed");
    }
    return res;
  }

  CohomologyRing h(a);
  SurgeryData& data = res.data;
  data.gamma_primes = bound_alphas(oa, data.alphas);
  data.duals = dual_cocycles(oa, h);
  data.gammas = correct_gammas(oa, data.gamma_primes, data.duals);
  data.gamma_space = zero_family(a);
  {
    std::vector<Vector> gs;
    for (const auto& g : data.gammas) gs.push_back(g.coords);
    data.gamma_space[static_cast<std::size_t>(k - 1)] = Subspace::span(gs, a.dim(k - 1), f);
  }
  data.complements = choose_complements(oa, o, data.gamma_space);
  res.which = surgery_case(f, k);
  res.ext = build_extension(oa, data, res.which, res.generators);
  res.inclusion = res.ext.inclusion;
  res.a_hat = OrientedCdga{res.ext.algebra, build_orientation_hat(res.ext, oa, data, res.generators)};
  if (!checks) return res;

  const Cdga& ah = res.a_hat.alg();
  auto fail = [&](const std::string& what) { throw InternalError(tag + what); };
  auto ok = [&](const std::string& what) { res.confirmed.push_back(what); };

  // obstruction selection
  {
    Subspace closed = o[static_cast<std::size_t>(k)].intersect(cocycles_in(a, k));
    Subspace bounded = o[static_cast<std::size_t>(k - 1)].mapped(a.d(k - 1));
    std::vector<Vector> al;
    for (const auto& x : data.alphas) al.push_back(x.coords);
    Subspace span = Subspace::span(al, a.dim(k), f);
    if (span.dim() != data.l() || bounded.sum(span).dim() != bounded.dim() + span.dim() ||
        !(bounded.sum(span) == closed))
      fail("O^k ∩ ker d is not d(O^{k-1}) ⊕ <alphas>");
    ok("O^k ∩ ker d = d(O^{k-1}) ⊕ <" + std::string(data.l() == 1 ? "alpha_1" : "alpha_1..alpha_" + std::to_string(data.l())) + ">");
  }
  for (std::size_t i = 0; i < data.l(); ++i) {
    if (!(a.apply_d(data.gamma_primes[i]) == data.alphas[i])) fail("d gamma' != alpha");
    if (!(a.apply_d(data.gammas[i]) == data.alphas[i])) fail("d gamma != alpha");
  }
  {
    const int deg = n - (k - 1);
    Subspace ker = cocycles_in(a, deg);
    for (const auto& g : data.gammas)
      for (std::size_t r = 0; r < ker.dim(); ++r)
        if (!oa.eps(a.mul(g, Element{deg, ker.vector(r)})).is_zero()) fail("eps(Gamma * ker d) != 0");
    ok("d gamma_i = alpha_i and eps(Gamma * ker d) = 0");
  }
  ok("d(Z) = d(O), Z ∩ Gamma = 0, (Z ⊕ Gamma) ∩ dA = 0, T ⊕ dA = A");
  if (n % 2 == 0 && k == n / 2 + 1) {
    Matrix g(data.l(), data.l(), f);
    for (std::size_t i = 0; i < data.l(); ++i)
      for (std::size_t j = 0; j < data.l(); ++j) g(i, j) = oa.eps(a.mul(data.gammas[i], data.gammas[j]));
    if (!is_nondegenerate(g)) fail("middle-degree pairing on Gamma is degenerate");
    ok("middle-degree pairing on Gamma is non-degenerate");
  }

  // the extension
  for (int deg = 0; deg + 2 <= ah.top(); ++deg)
    if (!(ah.d(deg + 1) * ah.d(deg)).is_zero()) fail("d^2 != 0 on the extension in degree " + std::to_string(deg));
  ok("d^2 = 0 on every instantiated monomial");
  auto bad = validate(ah);
  if (!bad.empty()) fail("extension is not a CDGA: " + describe(bad.front()));
  auto bad_map = check_map(res.inclusion);
  if (!bad_map.empty()) fail("inclusion is not a CDGA map: " + describe(bad_map.front()));
  CohomologyRing hh(ah);
  if (!is_quasi_iso(res.inclusion, n + 1, h, hh)) fail("inclusion is not a quasi-isomorphism up to degree n+1");
  ok("inclusion is a quasi-isomorphism up to degree " + std::to_string(n + 1));
  if (ah.dim(0) != 1 || ah.dim(1) != 0 || !ah.d(2).is_zero()) fail("extension leaves the reduced form (A^0, A^1, A^2)");

  // the orientation
  const Orientation& eh = res.a_hat.eps;
  for (std::size_t c = 0; c < ah.dim(n - 1); ++c)
    if (!eh(ah.apply_d(ah.basis_element(n - 1, c))).is_zero())
      fail("extended orientation does not vanish on d of " + ah.names(n - 1)[c]);
  for (std::size_t c = 0; c < a.dim(n); ++c)
    if (!(eh(res.inclusion.apply(a.basis_element(n, c))) == oa.eps.eps[c]))
      fail("extended orientation does not restrict to eps");
  if (!check_orientation(ah, eh).empty()) fail("extended functional is not an orientation");
  ok("extended orientation vanishes on exact elements and restricts to eps");

  res.orphans_hat = orphans(res.a_hat);
  if (!half_acyclic_up_to(ah, res.orphans_hat, n, k)) fail("orphans of the extension are not k-half-acyclic");
  ok("orphans of the extension are " + std::to_string(k) + "-half-acyclic");
  return res;
}

}  // namespace pdmodel

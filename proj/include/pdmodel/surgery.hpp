#pragma once

#include <string>
#include <vector>

#include "pdmodel/cdga.hpp"
#include "pdmodel/cohomology.hpp"
#include "pdmodel/duality.hpp"

namespace pdmodel {

/// Cohomology representatives h_1..h_m (all degrees) and cocycles h*_j with eps(h*_j h_i) = delta_ij.
struct DualCocycles {
  std::vector<Element> h;
  std::vector<Element> h_star;
};

/// Z, U and T = Z + Gamma + U, one subspace per degree of A.
struct Complements {
  GradedSubspace Z;
  GradedSubspace U;
  GradedSubspace T;
};

/// Everything one stage of surgery in degree k decides before extending the algebra.
struct SurgeryData {
  int k = 0;
  std::vector<Element> alphas;        // complete d(O^{k-1}) to O^k ∩ ker d
  std::vector<Element> gamma_primes;  // d gamma'_i = alpha_i
  DualCocycles duals;
  std::vector<Element> gammas;        // corrected so that eps(gamma_i * ker d) = 0
  GradedSubspace gamma_space;         // span of the gammas, zero outside degree k-1
  Complements complements;

  std::size_t l() const { return alphas.size(); }
};

enum class SurgeryCase { Skipped, Exterior, PrimePowers };

struct GeneratorInfo {
  enum class Role { C, W, U, V };
  Role role = Role::C;
  std::size_t index = 0;  // which alpha it belongs to
  std::string name;
  int degree = 0;
};

struct ExtensionResult {
  OrientedCdga a_hat;
  ChainAlgebraMap inclusion;
  SurgeryData data;
  SurgeryCase which = SurgeryCase::Skipped;
  std::vector<GeneratorInfo> generators;  // in adjoining order; only those below the truncation
  Extension ext;
  GradedSubspace orphans_hat;             // orphans of a_hat
  std::vector<std::string> confirmed;     // stage checks that ran and passed
};

/// Basis of a complement of d(O^{k-1}) inside O^k ∩ ker d. May be empty.
std::vector<Element> select_alphas(const OrientedCdga& oa, const GradedSubspace& o, int k);

/// The free-variables-zero preimages under d. Throws HypothesisError if some alpha is not exact.
std::vector<Element> bound_alphas(const OrientedCdga& oa, const std::vector<Element>& alphas);

/// Throws InternalError if a pairing block between representatives is singular.
DualCocycles dual_cocycles(const OrientedCdga& oa, const CohomologyRing& h);

/// gamma_i = gamma'_i - sum_j eps(gamma'_i h_j) h*_j.
std::vector<Element> correct_gammas(const OrientedCdga& oa, const std::vector<Element>& gamma_primes,
                                    const DualCocycles& duals);

/// Z: complement of O ∩ dA in O. U: complement of Z + Gamma + dA in A. Throws InternalError
/// when a required direct sum fails.
Complements choose_complements(const OrientedCdga& oa, const GradedSubspace& o, const GradedSubspace& gamma_space);

/// Adjoins c_i, w_i (and u_i, v_i in odd-prime-power case) below the truncation bound.
Extension build_extension(const OrientedCdga& oa, const SurgeryData& data, SurgeryCase which,
                          std::vector<GeneratorInfo>& generators);

/// Extends eps to the extension: equal to eps on A, (-1)^k eps(gamma_i xi') on w_i d(xi'),
/// -eps(gamma_i gamma_j) on c_i c_j and zero on every other monomial.
Orientation build_orientation_hat(const Extension& ext, const OrientedCdga& oa, const SurgeryData& data,
                                  const std::vector<GeneratorInfo>& generators);

SurgeryCase surgery_case(const Field& f, int k);

/// One stage in degree k. With checks on, every intermediate claim is re-verified and a failure
/// throws InternalError naming the stage and the check.
ExtensionResult surgery_step(const OrientedCdga& oa, int k, bool checks = true);

}  // namespace pdmodel

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdmodel/duality.hpp"
#include "pdmodel/report.hpp"
#include "pdmodel/surgery.hpp"

namespace pdmodel {

struct RunOptions {
  std::optional<Orientation> orientation;  // derived when absent
  std::optional<int> max_degree;           // working truncation; default n + 2
  bool stage_checks = true;
};

struct PipelineResult {
  int n = 0;
  OrientedCdga input;                       // the oriented working algebra (truncated or padded)
  OrientedCdga output;
  std::optional<ChainAlgebraMap> composite;  // absent for the formal shortcut
  std::vector<ExtensionResult> stages;
  std::vector<std::string> confirmed;       // final checks that ran and passed
  bool formal_shortcut = false;
  std::string note;
};

/// Name of the diagnostic emitted when n < 7; formal_model tolerates exactly this one.
inline constexpr const char* kDimensionCheck = "dimension n >= 7";

/// Clean iff a is a valid CDGA with A^0 = k, A^1 = 0, A^2 ⊂ ker d, H(A) is a simply-connected
/// Poincaré duality algebra of dimension n, and n >= 7. Degrees above a.top() are taken as zero.
Report check_hypotheses(const Cdga& a, int n);

/// Surgery in degrees first_half_degree(n)..n+1 followed by the orphan quotient. Throws
/// HypothesisError when check_hypotheses fails and InternalError when a verification fails.
PipelineResult run(const Cdga& a, int n, const RunOptions& opts = {});

/// For n <= 6: the cohomology algebra with zero differential and the induced orientation.
PipelineResult formal_model(const Cdga& a, int n, const RunOptions& opts = {});

/// Recomputes every claim about a result from scratch.
Report verify(const PipelineResult& r);

/// truncate(a, bound) for the working range; bound must be at least n + 2.
Cdga working_algebra(const Cdga& a, int n, std::optional<int> max_degree);

}  // namespace pdmodel

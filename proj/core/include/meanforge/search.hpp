#pragma once

#include <string>
#include <vector>

#include "meanforge/campaign.hpp"

namespace meanforge {

/// Derivative-free local search over the Cholesky factors of an
/// instance's positive definite inputs, trying to push the minimum slack
/// further down. Deterministic: no RNG, so a replayed seed reproduces the
/// whole trajectory.
struct RefinementResult {
  double initial_slack = 0.0;
  double final_slack = 0.0;
  /// Slack after each accepted step (starts at initial_slack).
  std::vector<double> trajectory;
};

inline constexpr int kRefinementTrials = 200;
inline constexpr double kRefinementInitialStep = 0.05;
inline constexpr double kRefinementMinStep = 1e-12;

/// Coordinate descent: round-robin over the factor entries (diagonal, then
/// real/imaginary parts below the diagonal, per matrix), multiplying one
/// coordinate by (1 +- step), accepting first improvements, halving the
/// step after a full cycle without one. Stops after kRefinementTrials
/// trials or when the step drops below kRefinementMinStep. Evaluations
/// that throw are counted as non-improvements.
RefinementResult refine_violation(const std::string& statement_id,
                                  const StatementInputs& inputs,
                                  const InequalityParams& params,
                                  double tolerance);

}  // namespace meanforge

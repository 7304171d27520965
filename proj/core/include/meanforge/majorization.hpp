#pragma once

#include <vector>

#include "meanforge/matrix.hpp"

namespace meanforge {

/// Default relative tolerance for dominance verdicts.
inline constexpr double kDominanceTolerance = 1e-9;

enum class DominanceMode {
  Weak,     // prefix sums of the decreasing rearrangements
  Strong,   // weak + total-sum equality
  WeakLog,  // prefix products (compared via log-sums)
  Log,      // weak-log + full-product equality
};

/// Outcome of a dominance test "x is dominated by y".
///
/// Additive modes: slack at prefix k is (sum_k y - sum_k x) / max(1, sum y).
/// Log modes: slack is the difference of prefix log-sums (zeros compared
/// directly: a collapsed x-prefix satisfies any constraint, a collapsed
/// y-prefix requires x to collapse too).
/// Strong and Log append one extra entry: the equality residual
/// -(|total difference|), so holds <=> worst_slack >= -tolerance in every
/// mode.
struct DominanceVerdict {
  bool holds = true;
  Index worst_index = -1;
  double worst_slack = 0.0;
  std::vector<double> per_index_slacks;
};

/// Copy of x sorted in decreasing order.
RealVector sort_decreasing(const RealVector& x);

/// Tests whether x is dominated by y in the given mode.
/// Throws LengthMismatch for different lengths and NegativeEntry for
/// negative entries in log modes.
DominanceVerdict dominates(const RealVector& x, const RealVector& y,
                           DominanceMode mode,
                           double tolerance = kDominanceTolerance);

/// Prefix sums of a vector (not rearranged).
RealVector prefix_sums(const RealVector& x);

/// Entrywise power of a nonnegative vector.
RealVector entrywise_power(const RealVector& x, double p);

}  // namespace meanforge

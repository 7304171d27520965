#include "meanforge/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace meanforge {

namespace {

// Entries below this threshold are treated as exact zeros in log modes.
constexpr double kLogZeroThreshold = 1e-300;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative(const RealVector& v, const char* side) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      throw NegativeEntry(std::string("log-mode dominance requires "
                                      "nonnegative entries; ") +
                          side + "[" + std::to_string(i) +
                          "] = " + std::to_string(v[i]));
    }
  }
}

// Log-mode slack for one prefix given zero counts and log-sums.
double log_slack(Index x_zeros, Index y_zeros, double x_logsum,
                 double y_logsum) {
  if (x_zeros > 0 && y_zeros > 0) return 0.0;   // 0 <= 0, equality
  if (x_zeros > 0) return kInf;                 // 0 <= positive
  if (y_zeros > 0) return -kInf;                // positive <= 0 fails
  return y_logsum - x_logsum;
}

}  // namespace

RealVector sort_decreasing(const RealVector& x) {
  RealVector out = x;
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

RealVector prefix_sums(const RealVector& x) {
  RealVector out(x.size());
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    acc += x[i];
    out[i] = acc;
  }
  return out;
}

RealVector entrywise_power(const RealVector& x, double p) {
  RealVector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    out[i] = (p == 0.0) ? 1.0 : std::pow(x[i], p);
    if (!std::isfinite(out[i])) {
      throw NumericalFailure("entrywise power overflowed at " +
                             std::to_string(x[i]));
    }
  }
  return out;
}

DominanceVerdict dominates(const RealVector& x, const RealVector& y,
                           DominanceMode mode, double tolerance) {
  if (x.size() != y.size()) {
    throw LengthMismatch("dominance operands have lengths " +
                         std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  const bool log_mode =
      mode == DominanceMode::WeakLog || mode == DominanceMode::Log;
  const bool equality_mode =
      mode == DominanceMode::Strong || mode == DominanceMode::Log;
  if (log_mode) {
    require_nonnegative(x, "x");
    require_nonnegative(y, "y");
  }

  const Index n = x.size();
  DominanceVerdict verdict;
  if (n == 0) {
    verdict.holds = true;
    verdict.worst_index = -1;
    verdict.worst_slack = kInf;
    return verdict;
  }

  const RealVector xs = sort_decreasing(x);
  const RealVector ys = sort_decreasing(y);
  std::vector<double>& slacks = verdict.per_index_slacks;
  slacks.reserve(static_cast<size_t>(n) + (equality_mode ? 1 : 0));

  if (!log_mode) {
    const double denom = std::max(1.0, ys.sum());
    double x_acc = 0.0, y_acc = 0.0;
    for (Index k = 0; k < n; ++k) {
      x_acc += xs[k];
      y_acc += ys[k];
      slacks.push_back((y_acc - x_acc) / denom);
    }
    if (equality_mode) {
      slacks.push_back(-std::abs(y_acc - x_acc) / denom);
    }
  } else {
    double x_logsum = 0.0, y_logsum = 0.0;
    Index x_zeros = 0, y_zeros = 0;
    for (Index k = 0; k < n; ++k) {
      if (xs[k] < kLogZeroThreshold) ++x_zeros; else x_logsum += std::log(xs[k]);
      if (ys[k] < kLogZeroThreshold) ++y_zeros; else y_logsum += std::log(ys[k]);
      slacks.push_back(log_slack(x_zeros, y_zeros, x_logsum, y_logsum));
    }
    if (equality_mode) {
      double eq;
      if (x_zeros > 0 && y_zeros > 0) eq = 0.0;            // both products 0
      else if (x_zeros > 0 || y_zeros > 0) eq = -kInf;     // only one collapses
      else eq = -std::abs(y_logsum - x_logsum);
      slacks.push_back(eq);
    }
  }

  verdict.worst_slack = kInf;
  verdict.worst_index = 0;
  for (size_t i = 0; i < slacks.size(); ++i) {
    if (slacks[i] < verdict.worst_slack) {
      verdict.worst_slack = slacks[i];
      verdict.worst_index = static_cast<Index>(i);
    }
  }
  verdict.holds = verdict.worst_slack >= -tolerance;
  return verdict;
}

}  // namespace meanforge

#pragma once

#include <string>

#include "meanforge/majorization.hpp"
#include "meanforge/matrix.hpp"

namespace meanforge {

/// A unitarily invariant norm selection.
///
/// Schatten carries an order p in [1, inf]; KyFan carries a rank k;
/// KyFanAll denotes the full Ky Fan sweep k = 1..dim (a family, not a
/// single functional — evaluate_norm rejects it).
struct NormSpec {
  enum class Kind { Schatten, KyFan, Trace, Spectral, KyFanAll };

  Kind kind = Kind::Trace;
  double p = 1.0;
  Index k = 1;

  static NormSpec schatten(double p);
  static NormSpec ky_fan(Index k);
  static NormSpec trace();
  static NormSpec spectral();
  static NormSpec ky_fan_all();

  /// Human-readable tag, e.g. "schatten(2)" or "kyfan(3)".
  std::string label() const;
};

/// Schatten p-norm (sum s_i^p)^{1/p}; p = inf gives the spectral norm.
/// Throws DomainError for p < 1 or NaN.
double schatten_norm(const ComplexMatrix& m, double p);

/// Ky Fan k-norm: sum of the k largest singular values (1 <= k <= dim).
double ky_fan_norm(const ComplexMatrix& m, Index k);

double trace_norm(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);

/// Evaluates a point norm; throws DomainError for KyFanAll.
double evaluate_norm(const ComplexMatrix& m, const NormSpec& spec);

/// Full Ky Fan sweep: weak majorization of s(a) by s(b). By Fan dominance
/// this decides the ordering under every unitarily invariant norm at once.
DominanceVerdict fan_dominance(const ComplexMatrix& a, const ComplexMatrix& b,
                               double tolerance = kDominanceTolerance);

}  // namespace meanforge

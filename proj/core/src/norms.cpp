#include "meanforge/norms.hpp"

#include <cmath>
#include <limits>

#include "meanforge/linalg.hpp"

namespace meanforge {

NormSpec NormSpec::schatten(double p) { return {Kind::Schatten, p, 1}; }
NormSpec NormSpec::ky_fan(Index k) { return {Kind::KyFan, 1.0, k}; }
NormSpec NormSpec::trace() { return {Kind::Trace, 1.0, 1}; }
NormSpec NormSpec::spectral() { return {Kind::Spectral, 1.0, 1}; }
NormSpec NormSpec::ky_fan_all() { return {Kind::KyFanAll, 1.0, 1}; }

std::string NormSpec::label() const {
  switch (kind) {
    case Kind::Schatten:
      if (std::isinf(p)) return "schatten(inf)";
      return "schatten(" + std::to_string(p) + ")";
    case Kind::KyFan:
      return "kyfan(" + std::to_string(k) + ")";
    case Kind::Trace:
      return "trace";
    case Kind::Spectral:
      return "spectral";
    case Kind::KyFanAll:
      return "kyfan_all";
  }
  return "unknown";
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw DomainError("Schatten order must satisfy p >= 1, got " +
                      std::to_string(p));
  }
  const SpectrumVector s = singular_values(m);
  if (s.size() == 0) return 0.0;
  const double top = s[0];
  if (std::isinf(p) || top == 0.0) return top;
  // Scale by the largest singular value to keep the accumulation in range.
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    acc += std::pow(s[i] / top, p);
  }
  return top * std::pow(acc, 1.0 / p);
}

double ky_fan_norm(const ComplexMatrix& m, Index k) {
  if (k < 1 || k > m.dim()) {
    throw IndexOutOfRange("Ky Fan rank " + std::to_string(k) +
                          " outside [1, " + std::to_string(m.dim()) + "]");
  }
  const SpectrumVector s = singular_values(m);
  double acc = 0.0;
  for (Index i = 0; i < k; ++i) acc += s[i];
  return acc;
}

double trace_norm(const ComplexMatrix& m) { return schatten_norm(m, 1.0); }

double spectral_norm(const ComplexMatrix& m) {
  return schatten_norm(m, std::numeric_limits<double>::infinity());
}

double evaluate_norm(const ComplexMatrix& m, const NormSpec& spec) {
  switch (spec.kind) {
    case NormSpec::Kind::Schatten:
      return schatten_norm(m, spec.p);
    case NormSpec::Kind::KyFan:
      return ky_fan_norm(m, spec.k);
    case NormSpec::Kind::Trace:
      return trace_norm(m);
    case NormSpec::Kind::Spectral:
      return spectral_norm(m);
    case NormSpec::Kind::KyFanAll:
      break;
  }
  throw DomainError("kyfan_all denotes a sweep, not a single norm value");
}

DominanceVerdict fan_dominance(const ComplexMatrix& a, const ComplexMatrix& b,
                               double tolerance) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("fan_dominance operands have dims " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  return dominates(singular_values(a).values(), singular_values(b).values(),
                   DominanceMode::Weak, tolerance);
}

}  // namespace meanforge

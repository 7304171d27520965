#include "meanforge/sampling.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

#include "meanforge/linalg.hpp"

namespace meanforge {

namespace {

constexpr double kUnitarityTolerance = 1e-10;
constexpr int kMaxUnitaryRetries = 3;

RealVector log_uniform_spectrum(const SamplerConfig& config, RngState& rng) {
  RealVector lambda(config.dim);
  const double lo = std::log(config.eig_min);
  const double hi = std::log(config.eig_max);
  for (Index i = 0; i < config.dim; ++i) {
    lambda[i] = std::exp(lo + uniform_unit(rng) * (hi - lo));
  }
  return lambda;
}

PositiveDefiniteMatrix rotate_spectrum(const ComplexMatrix& q,
                                       const RealVector& lambda) {
  DenseMatrix m =
      q.entries() * lambda.asDiagonal() * q.entries().adjoint();
  DenseMatrix sym = 0.5 * (m + m.adjoint().eval());
  return PositiveDefiniteMatrix(HermitianMatrix(ComplexMatrix(std::move(sym))));
}

}  // namespace

void SamplerConfig::validate() const {
  if (dim < 1) {
    throw ConfigError("sampler dim must be >= 1");
  }
  if (!(eig_min > 0.0) || !(eig_max >= eig_min) || !std::isfinite(eig_max)) {
    throw ConfigError("sampler spectrum range must satisfy "
                      "0 < eig_min <= eig_max < inf");
  }
}

std::uint64_t derive_instance_seed(std::uint64_t campaign_seed,
                                   std::uint64_t instance_index) {
  // splitmix64 finalizer over campaign_seed XOR instance_index; every step
  // is a bijection, so seeds never collide across indices (or seeds) with
  // the other argument fixed.
  std::uint64_t z = campaign_seed ^ instance_index;
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform_unit(RngState& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(RngState& rng) {
  // Box-Muller on (0, 1] x [0, 1); the +1 keeps log away from 0.
  const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

ComplexMatrix random_ginibre(Index dim, RngState& rng) {
  DenseMatrix g(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      g(r, c) = Complex(standard_normal(rng), standard_normal(rng)) *
                std::numbers::sqrt2 / 2.0;
    }
  }
  return ComplexMatrix(std::move(g));
}

ComplexMatrix random_unitary(Index dim, RngState& rng) {
  if (dim < 1) {
    throw DomainError("random unitary requires dim >= 1");
  }
  for (int attempt = 0; attempt < kMaxUnitaryRetries; ++attempt) {
    ComplexMatrix g = random_ginibre(dim, rng);
    Eigen::HouseholderQR<DenseMatrix> qr(g.entries());
    DenseMatrix q = qr.householderQ();
    const DenseMatrix& r = qr.matrixQR();

    // Fix the gauge: scale columns so the R diagonal is positive real.
    bool degenerate = false;
    for (Index j = 0; j < dim; ++j) {
      const double mag = std::abs(r(j, j));
      if (mag < 1e-12) {
        degenerate = true;
        break;
      }
      q.col(j) *= r(j, j) / mag;
    }
    if (degenerate) continue;

    const double drift =
        (q.adjoint() * q - DenseMatrix::Identity(dim, dim)).norm();
    if (drift > kUnitarityTolerance) continue;
    return ComplexMatrix(std::move(q));
  }
  throw NumericalFailure("Haar unitary draw degenerated repeatedly");
}

PositiveDefiniteMatrix random_pd(const SamplerConfig& config, RngState& rng) {
  config.validate();
  ComplexMatrix q = random_unitary(config.dim, rng);
  RealVector lambda = log_uniform_spectrum(config, rng);
  return rotate_spectrum(q, lambda);
}

std::pair<PositiveDefiniteMatrix, PositiveDefiniteMatrix>
random_commuting_pair(const SamplerConfig& config, RngState& rng) {
  config.validate();
  ComplexMatrix q = random_unitary(config.dim, rng);
  RealVector lambda = log_uniform_spectrum(config, rng);
  RealVector mu = log_uniform_spectrum(config, rng);
  PositiveDefiniteMatrix a = rotate_spectrum(q, lambda);
  PositiveDefiniteMatrix b = rotate_spectrum(q, mu);
  return {std::move(a), std::move(b)};
}

}  // namespace meanforge

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

#include "meanforge/matrix.hpp"

namespace meanforge {

/// The RNG pipeline is pinned so reports can be reproduced bit-for-bit:
/// seed derivation (splitmix64 avalanche), engine (mt19937_64), Gaussian
/// (Box-Muller on 53-bit uniforms), log-uniform spectra.
inline constexpr std::string_view kRngAlgorithmVersion =
    "splitmix64/mt19937_64/box-muller/log-uniform v1";

using RngState = std::mt19937_64;

/// Sampler parameters. Spectra are drawn log-uniformly from
/// [eig_min, eig_max]; the defaults cap the condition number at 1e6.
struct SamplerConfig {
  Index dim = 2;
  double eig_min = 1e-3;
  double eig_max = 1e3;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Stateless collision-resistant mix of campaign seed and instance index.
/// Injective in each argument with the other fixed.
std::uint64_t derive_instance_seed(std::uint64_t campaign_seed,
                                   std::uint64_t instance_index);

/// One standard normal draw (Box-Muller; consumes two engine outputs).
double standard_normal(RngState& rng);

/// Uniform draw in [0, 1) with 53-bit resolution.
double uniform_unit(RngState& rng);

/// Matrix of iid standard complex Gaussians (variance 1 per entry).
ComplexMatrix random_ginibre(Index dim, RngState& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// triangular factor's diagonal phases normalized away. Retries degenerate
/// draws up to 3 times before NumericalFailure.
ComplexMatrix random_unitary(Index dim, RngState& rng);

/// Random positive definite matrix Q diag(lambda) Q^* with Haar Q and
/// log-uniform lambda in [eig_min, eig_max].
PositiveDefiniteMatrix random_pd(const SamplerConfig& config, RngState& rng);

/// A commuting pair: independent spectra in a shared Haar eigenbasis.
std::pair<PositiveDefiniteMatrix, PositiveDefiniteMatrix>
random_commuting_pair(const SamplerConfig& config, RngState& rng);

}  // namespace meanforge

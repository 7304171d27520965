#pragma once

// Small construction helpers shared by the test files: deterministic
// random operands (through the library's own seeded samplers) and literal
// matrix builders for hand-written cases.

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "meanforge/matrix.hpp"
#include "meanforge/sampling.hpp"

namespace testsupport {

/// Row-major literal complex matrix; the list length must be a square.
inline meanforge::ComplexMatrix literal(
    std::initializer_list<meanforge::Complex> entries) {
  meanforge::Index dim = 0;
  while (dim * dim < static_cast<meanforge::Index>(entries.size())) ++dim;
  meanforge::DenseMatrix m(dim, dim);
  auto it = entries.begin();
  for (meanforge::Index r = 0; r < dim; ++r) {
    for (meanforge::Index c = 0; c < dim; ++c) m(r, c) = *it++;
  }
  return meanforge::ComplexMatrix(std::move(m));
}

inline meanforge::PositiveDefiniteMatrix diagonal_pd(
    std::initializer_list<double> diag) {
  meanforge::RealVector d(static_cast<meanforge::Index>(diag.size()));
  meanforge::Index i = 0;
  for (double v : diag) d[i++] = v;
  return meanforge::PositiveDefiniteMatrix(
      meanforge::HermitianMatrix(meanforge::ComplexMatrix::diagonal(d)));
}

/// Seeded random positive definite operand with the given spectrum range.
inline meanforge::PositiveDefiniteMatrix sampled_pd(meanforge::Index dim,
                                                    std::uint64_t seed,
                                                    double eig_min = 1e-3,
                                                    double eig_max = 1e3) {
  meanforge::SamplerConfig config;
  config.dim = dim;
  config.eig_min = eig_min;
  config.eig_max = eig_max;
  config.seed = seed;
  meanforge::RngState rng(seed);
  return meanforge::random_pd(config, rng);
}

/// Seeded random square complex matrix (Ginibre ensemble).
inline meanforge::ComplexMatrix sampled_matrix(meanforge::Index dim,
                                               std::uint64_t seed) {
  meanforge::RngState rng(seed);
  return meanforge::random_ginibre(dim, rng);
}

inline double relative_gap(const meanforge::ComplexMatrix& a,
                           const meanforge::ComplexMatrix& b) {
  const double scale = std::max(1e-300, b.frobenius_norm());
  return (a - b).frobenius_norm() / scale;
}

}  // namespace testsupport

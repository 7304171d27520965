#pragma once

// Extended-precision reference implementations used as independent test
// oracles. Every routine here is a literal transcription of the defining
// formula, evaluated in 77-significant-digit floating point with textbook
// algorithms that share nothing with the production code paths:
// Gauss-Jordan elimination for inverses, the Denman-Beavers iteration for
// principal square roots, and a one-sided Jacobi process for spectra.
// Inputs and outputs are plain doubles; all intermediate arithmetic is
// extended, so the returned values are correctly rounded for every
// comparison at the 1e-12 level and far beyond.

#include <vector>

#include "meanforge/matrix.hpp"

namespace testsupport {

/// Singular values of m, sorted decreasing.
std::vector<double> ref_singular_values(const meanforge::ComplexMatrix& m);

/// Eigenvalues (sorted decreasing) of a Hermitian positive semidefinite
/// matrix.
std::vector<double> ref_pd_spectrum(const meanforge::ComplexMatrix& m);

/// Singular values of diag(left) * core * diag(right), the scalings
/// applied entrywise in extended precision. Exercises arbitrarily wide
/// dynamic ranges without loss.
std::vector<double> ref_graded_spectrum(const meanforge::RealVector& left,
                                        const meanforge::ComplexMatrix& core,
                                        const meanforge::RealVector& right);

/// Eigenvalues of sum_j F_j F_j^* (sorted decreasing).
std::vector<double> ref_gram_sum_spectrum(
    const std::vector<meanforge::ComplexMatrix>& factors);

/// H^e for Hermitian positive definite H, rounded back to doubles.
meanforge::ComplexMatrix ref_pd_power(const meanforge::ComplexMatrix& h,
                                      double e);

/// Principal square root via Denman-Beavers (no eigendecomposition),
/// rounded back to doubles.
meanforge::ComplexMatrix ref_sqrt(const meanforge::ComplexMatrix& h);

/// The weighted geometric mean A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2},
/// evaluated literally: square roots by Denman-Beavers, the inverse by
/// Gauss-Jordan, the inner fractional power through an extended-precision
/// eigendecomposition.
meanforge::ComplexMatrix ref_t_mean(const meanforge::ComplexMatrix& a,
                                    const meanforge::ComplexMatrix& b,
                                    double t);

/// Eigenvalues of sum_i (A_i^s #_t B_i^s)^r with every step literal.
std::vector<double> ref_sum_powered_means_spectrum(
    const std::vector<meanforge::ComplexMatrix>& as,
    const std::vector<meanforge::ComplexMatrix>& bs, double t, double s,
    double r);

/// Eigenvalues of (P^{e1} Q^{e2} P^{e1})^{e3} for Hermitian positive
/// definite P and Q.
std::vector<double> ref_powered_triple_spectrum(
    const meanforge::ComplexMatrix& p_mat, double e1,
    const meanforge::ComplexMatrix& q_mat, double e2, double e3);

}  // namespace testsupport

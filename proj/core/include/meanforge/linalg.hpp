#pragma once

#include <functional>
#include <vector>

#include "meanforge/matrix.hpp"

namespace meanforge {

/// Relative drift tolerated by hermitize() before symmetrizing.
inline constexpr double kHermitizeTolerance = 1e-8;
/// Eigenvalues in [-kPsdClipTolerance * lambda_max, 0) are clipped to 0
/// before fractional powers; anything more negative is a domain error.
inline constexpr double kPsdClipTolerance = 1e-12;

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted decreasing.
/// Verifies unitarity of the basis and reconstruction of the input.
EigenDecomposition hermitian_eig(const HermitianMatrix& m);

/// Applies a scalar map to the spectrum: basis * diag(f(lambda)) * basis^*.
/// Throws DomainError if f produces a non-finite value.
HermitianMatrix matrix_function(const HermitianMatrix& m,
                                const std::function<double(double)>& f);

/// Like matrix_function for maps defined on [0, inf): eigenvalues inside
/// the PSD clip tolerance are snapped to 0 first, anything more negative
/// is a domain error.
HermitianMatrix matrix_function_psd(const HermitianMatrix& m,
                                    const std::function<double(double)>& f);

/// Matrix power M^e through the eigenbasis.
///
/// Integer exponents apply to any Hermitian matrix (negative eigenvalues
/// allowed); fractional exponents require the matrix to be positive
/// semidefinite up to the clip tolerance. Negative exponents require an
/// invertible matrix.
HermitianMatrix matrix_power(const HermitianMatrix& m, double exponent);

/// Singular values, sorted decreasing.
SpectrumVector singular_values(const ComplexMatrix& m);

/// SVD of the two-sided scaled product diag(left) * core * diag(right).
struct GradedSvd {
  SpectrumVector singular_values;
  ComplexMatrix left_basis;
};

/// Accuracy contract for the graded SVD routines.
///
/// Standard: working-precision SVD. Absolute errors are ~eps * sigma_max,
/// which is ample whenever downstream consumers normalize by the dominant
/// singular values (ratio-style slacks), but turns singular values smaller
/// than eps * sigma_max into noise.
/// High: every singular value is computed with high relative accuracy, no
/// matter how small it is compared to sigma_max. Required by consumers that
/// compare full prefix PRODUCTS of spectra (log-domain dominance), where a
/// trailing singular value off by orders of magnitude corrupts the verdict.
/// When the combined dynamic range of the scalings is wide, this path runs
/// a one-sided Jacobi SVD in extended precision (dims here are small, so
/// the cost is negligible); benign ranges keep the fast path.
enum class GradedPrecision { Standard, High };

/// Singular values (and left singular basis) of diag(left) * core *
/// diag(right) without ever forming ill-conditioned matrix products
/// upstream: the diagonal scalings are applied entrywise (each entry exact
/// to rounding), so the scaled product represents its spectrum faithfully
/// when core is unitary (within roundoff), which every caller guarantees.
/// This is the workhorse for spectra of expressions like A^alpha B^beta
/// whose condition numbers overflow a naive assembly: with
/// A = Q diag(a) Q^* and B = W diag(b) W^*, sigma(A^alpha B^beta) equals
/// graded_singular_values(a^alpha, Q^* W, b^beta).
GradedSvd graded_svd(const RealVector& left, const ComplexMatrix& core,
                     const RealVector& right,
                     GradedPrecision precision = GradedPrecision::Standard);
SpectrumVector graded_singular_values(
    const RealVector& left, const ComplexMatrix& core,
    const RealVector& right,
    GradedPrecision precision = GradedPrecision::Standard);

/// Eigenvalues of sum_j F_j F_j^* through the singular values of the
/// concatenated factor [F_1 ... F_m]: the Gram identity makes the sum of
/// products exactly Hermitian positive semidefinite by construction, so no
/// symmetrization gate or squaring of condition numbers is involved. All
/// factors must be square and share one dimension.
SpectrumVector gram_sum_spectrum(const std::vector<ComplexMatrix>& factors);

/// Modulus |M| = (M^* M)^{1/2}, assembled from the SVD as V Sigma V^*.
HermitianMatrix matrix_abs(const ComplexMatrix& m);

/// Block-diagonal direct sum diag(A, B). A 0-dim operand is neutral.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Symmetrizes a nearly-Hermitian matrix to (M + M^*)/2.
/// Throws NotHermitian if the drift exceeds 1e-8 * max(1, ||M||_F).
HermitianMatrix hermitize(const ComplexMatrix& m);

/// Convenience: eigenvalues of a Hermitian matrix, sorted decreasing.
RealVector hermitian_eigenvalues(const HermitianMatrix& m);

/// Positive-definite wrapper around hermitize() for assembled products.
PositiveDefiniteMatrix positive_definite(const ComplexMatrix& m);

}  // namespace meanforge

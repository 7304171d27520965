#pragma once

#include "meanforge/matrix.hpp"

namespace meanforge {

/// Interpolation weight t in [0, 1] for the weighted geometric mean.
class MeanWeight {
 public:
  explicit MeanWeight(double t);
  double value() const { return t_; }

 private:
  double t_;
};

/// Condition-number guard: means refuse the sandwich inversion beyond this.
inline constexpr double kMeanConditionLimit = 1e12;

/// Weighted geometric mean A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
///
/// t = 0 returns A and t = 1 returns B (up to roundoff). Throws
/// DimensionMismatch for unequal dims and DomainError when cond(A) exceeds
/// the inversion guard.
PositiveDefiniteMatrix t_geometric_mean(const PositiveDefiniteMatrix& a,
                                        const PositiveDefiniteMatrix& b,
                                        MeanWeight t);

/// Midpoint geometric mean: exactly t_geometric_mean(a, b, 1/2).
PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& a,
                                      const PositiveDefiniteMatrix& b);

/// The unitary U with A # B = A^{1/2} U B^{1/2}. Algebraically this is
/// (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} B^{-1/2}, which equals the unitary
/// polar factor of A^{-1/2} B^{1/2}; it is computed in the latter form
/// (via SVD) so the result is unitary to machine precision even when the
/// operands are ill-conditioned.
ComplexMatrix unitary_factor(const PositiveDefiniteMatrix& a,
                             const PositiveDefiniteMatrix& b);

}  // namespace meanforge

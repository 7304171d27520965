#include "meanforge/means.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <cmath>

#include "meanforge/linalg.hpp"

namespace meanforge {

namespace {

struct SqrtPair {
  ComplexMatrix half;      // A^{1/2}
  ComplexMatrix inv_half;  // A^{-1/2}
};

// Both square roots from a single decomposition.
SqrtPair hermitian_sqrt_pair(const PositiveDefiniteMatrix& a) {
  EigenDecomposition eig = hermitian_eig(a.hermitian());
  const DenseMatrix& q = eig.basis.entries();
  RealVector sqrt_vals(eig.eigenvalues.size());
  RealVector rsqrt_vals(eig.eigenvalues.size());
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (!(eig.eigenvalues[i] > 0.0)) {
      throw DomainError("positive definite matrix has nonpositive computed "
                        "eigenvalue " +
                        std::to_string(eig.eigenvalues[i]));
    }
    sqrt_vals[i] = std::sqrt(eig.eigenvalues[i]);
    rsqrt_vals[i] = 1.0 / sqrt_vals[i];
  }
  DenseMatrix half = q * sqrt_vals.asDiagonal() * q.adjoint();
  DenseMatrix inv_half = q * rsqrt_vals.asDiagonal() * q.adjoint();
  return SqrtPair{ComplexMatrix(std::move(half)),
                  ComplexMatrix(std::move(inv_half))};
}

// Congruence M B M^* (M arbitrary, B positive definite) formed as
// (M L)(M L)^* with B = L L^*. The Gram shape keeps the result Hermitian
// by construction; a literal triple product picks up asymmetry of order
// eps * cond and trips the hermitize gate for ill-conditioned operands.
DenseMatrix congruence(const DenseMatrix& m,
                       const PositiveDefiniteMatrix& b) {
  Eigen::LLT<Eigen::MatrixXcd> llt(b.matrix().entries());
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("Cholesky factorization failed inside a "
                           "congruence");
  }
  DenseMatrix w = m * DenseMatrix(llt.matrixL());
  return w * w.adjoint();
}

void require_compatible(const PositiveDefiniteMatrix& a,
                        const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("mean operands have dims " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
}

}  // namespace

MeanWeight::MeanWeight(double t) : t_(t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ParamOutOfRange("mean weight t must be in [0, 1], got " +
                          std::to_string(t));
  }
}

PositiveDefiniteMatrix t_geometric_mean(const PositiveDefiniteMatrix& a,
                                        const PositiveDefiniteMatrix& b,
                                        MeanWeight t) {
  require_compatible(a, b);
  if (a.condition_number() > kMeanConditionLimit) {
    throw DomainError("mean base is too ill-conditioned to invert: cond = " +
                      std::to_string(a.condition_number()));
  }
  SqrtPair sa = hermitian_sqrt_pair(a);
  HermitianMatrix inner =
      hermitize(ComplexMatrix(congruence(sa.inv_half.entries(), b)));
  // A^{1/2} X^t A^{1/2} = (A^{1/2} X^{t/2})(A^{1/2} X^{t/2})^*.
  HermitianMatrix half_power = matrix_power(inner, 0.5 * t.value());
  DenseMatrix w = sa.half.entries() * half_power.matrix().entries();
  HermitianMatrix assembled = hermitize(ComplexMatrix(w * w.adjoint()));
  // The true mean dominates lambda_min(A)^{1-t} lambda_min(B)^t I (joint
  // monotonicity against the scalar lower bounds), but the floating-point
  // assembly can push its smallest computed eigenvalues below that once
  // cond(A) * cond(B) approaches 1/eps. Clamping at the certified bound
  // only moves computed eigenvalues toward the exact ones.
  const double certified_floor =
      std::pow(a.eigenvalue_min(), 1.0 - t.value()) *
      std::pow(b.eigenvalue_min(), t.value());
  EigenDecomposition eig = hermitian_eig(assembled);
  bool clamped = false;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] < certified_floor) {
      eig.eigenvalues[i] = certified_floor;
      clamped = true;
    }
  }
  if (clamped) {
    RealVector roots = eig.eigenvalues.cwiseSqrt();
    DenseMatrix g = eig.basis.entries() * roots.asDiagonal();
    assembled = hermitize(ComplexMatrix(DenseMatrix(g * g.adjoint())));
  }
  return PositiveDefiniteMatrix(std::move(assembled));
}

PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& a,
                                      const PositiveDefiniteMatrix& b) {
  return t_geometric_mean(a, b, MeanWeight(0.5));
}

ComplexMatrix unitary_factor(const PositiveDefiniteMatrix& a,
                             const PositiveDefiniteMatrix& b) {
  require_compatible(a, b);
  if (a.condition_number() > kMeanConditionLimit ||
      b.condition_number() > kMeanConditionLimit) {
    throw DomainError("unitary factor requires both operands invertible "
                      "within the conditioning guard");
  }
  // U is the unitary polar factor of M = A^{-1/2} B^{1/2}: writing
  // M = (M M^*)^{1/2} Q gives (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} = M Q^* A^{1/2},
  // so A # B = B^{1/2} Q^* A^{1/2} whose adjoint is A^{1/2} Q B^{1/2}.
  // Forming Q = W V^* from the SVD M = W S V^* keeps the result unitary to
  // machine precision regardless of operand conditioning, which the triple
  // product (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} B^{-1/2} does not.
  SqrtPair sa = hermitian_sqrt_pair(a);
  SqrtPair sb = hermitian_sqrt_pair(b);
  DenseMatrix m = sa.inv_half.entries() * sb.half.entries();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return ComplexMatrix(DenseMatrix(svd.matrixU() * svd.matrixV().adjoint()));
}

}  // namespace meanforge

#include "meanforge/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace meanforge {

namespace {

void require_finite(const DenseMatrix& m) {
  if (!m.allFinite()) {
    throw NumericalFailure("matrix has non-finite entries");
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("matrix dimensions differ: " +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(DenseMatrix m) : storage_(std::move(m)) {
  if (storage_.rows() != storage_.cols()) {
    throw DimensionMismatch("matrix is not square: " +
                            std::to_string(storage_.rows()) + "x" +
                            std::to_string(storage_.cols()));
  }
  require_finite(storage_);
}

ComplexMatrix ComplexMatrix::identity(Index dim) {
  return ComplexMatrix(DenseMatrix::Identity(dim, dim));
}

ComplexMatrix ComplexMatrix::zero(Index dim) {
  return ComplexMatrix(DenseMatrix::Zero(dim, dim));
}

ComplexMatrix ComplexMatrix::diagonal(const RealVector& diag) {
  DenseMatrix m = DenseMatrix::Zero(diag.size(), diag.size());
  for (Index i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  return ComplexMatrix(storage_.adjoint());
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return ComplexMatrix(a.storage_ + b.storage_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return ComplexMatrix(a.storage_ - b.storage_);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return ComplexMatrix(a.storage_ * b.storage_);
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) {
  return ComplexMatrix(scalar * m.storage_);
}

ComplexMatrix operator*(double scalar, const ComplexMatrix& m) {
  return Complex(scalar, 0.0) * m;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  const double drift = matrix_.asymmetry();
  const double bound =
      kConstructionTolerance * std::max(1.0, matrix_.frobenius_norm());
  if (drift > bound) {
    throw NotHermitian("matrix is not Hermitian: ||M - M*||_F = " +
                       std::to_string(drift));
  }
}

PositiveDefiniteMatrix::PositiveDefiniteMatrix(HermitianMatrix m)
    : hermitian_(std::move(m)) {
  if (hermitian_.dim() == 0) {
    throw DomainError("positive definite matrix must have dim >= 1");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(
      hermitian_.matrix().entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalue computation failed");
  }
  eig_min_ = solver.eigenvalues().minCoeff();
  eig_max_ = solver.eigenvalues().maxCoeff();
  if (!(eig_max_ > 0.0) || !(eig_min_ > kPositivityTolerance * eig_max_)) {
    throw DomainError("matrix is not positive definite: lambda_min = " +
                      std::to_string(eig_min_) + ", lambda_max = " +
                      std::to_string(eig_max_));
  }
}

SpectrumVector::SpectrumVector(RealVector values) : values_(std::move(values)) {
  for (Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NumericalFailure("spectrum entry is not finite");
    }
    if (values_[i] < 0.0) {
      throw NegativeEntry("spectrum entry is negative: " +
                          std::to_string(values_[i]));
    }
    if (values_[i] == 0.0) values_[i] = 0.0;  // normalize -0.0
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw NumericalFailure("spectrum is not sorted decreasing");
    }
  }
}

}  // namespace meanforge

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "meanforge/errors.hpp"

namespace meanforge {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using RealVector = Eigen::VectorXd;
// Row-major storage so the in-memory layout matches the wire format.
using DenseMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Square complex matrix with validated (finite) entries.
///
/// Value type: all operations return fresh matrices. dim 0 is allowed and
/// acts as the neutral element of direct sums.
class ComplexMatrix {
 public:
  ComplexMatrix() : storage_(0, 0) {}
  explicit ComplexMatrix(DenseMatrix m);

  static ComplexMatrix identity(Index dim);
  static ComplexMatrix zero(Index dim);
  /// Diagonal matrix with the given real diagonal.
  static ComplexMatrix diagonal(const RealVector& diag);

  Index dim() const { return storage_.rows(); }
  const DenseMatrix& entries() const { return storage_; }
  Complex operator()(Index row, Index col) const {
    return storage_(row, col);
  }

  ComplexMatrix adjoint() const;
  double frobenius_norm() const { return storage_.norm(); }
  /// Frobenius distance to the adjoint; 0 for exactly Hermitian matrices.
  double asymmetry() const { return (storage_ - storage_.adjoint()).norm(); }

  friend ComplexMatrix operator+(const ComplexMatrix& a,
                                 const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a,
                                 const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m);
  friend ComplexMatrix operator*(double scalar, const ComplexMatrix& m);

 private:
  DenseMatrix storage_;
};

/// Hermitian matrix: ||M - M*||_F <= 1e-12 * max(1, ||M||_F) at construction.
///
/// Construction is strict; use hermitize() to symmetrize nearly-Hermitian
/// numerical results (which tolerates drift up to 1e-8 relative).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m);

  Index dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  static constexpr double kConstructionTolerance = 1e-12;

 private:
  ComplexMatrix matrix_;
};

/// Hermitian positive definite matrix: lambda_min > 1e-13 * lambda_max.
///
/// Caches the extreme eigenvalues so condition-number guards are free.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(HermitianMatrix m);

  Index dim() const { return hermitian_.dim(); }
  const HermitianMatrix& hermitian() const { return hermitian_; }
  const ComplexMatrix& matrix() const { return hermitian_.matrix(); }

  double eigenvalue_min() const { return eig_min_; }
  double eigenvalue_max() const { return eig_max_; }
  double condition_number() const { return eig_max_ / eig_min_; }

  static constexpr double kPositivityTolerance = 1e-13;

 private:
  HermitianMatrix hermitian_;
  double eig_min_ = 0.0;
  double eig_max_ = 0.0;
};

/// Eigendecomposition of a Hermitian matrix.
///
/// Produced by hermitian_eig(); eigenvalues are sorted decreasing and the
/// basis columns are the matching orthonormal eigenvectors.
struct EigenDecomposition {
  RealVector eigenvalues;
  ComplexMatrix basis;
};

/// Nonnegative vector sorted in decreasing order (a singular-value or
/// positive-spectrum list).
class SpectrumVector {
 public:
  SpectrumVector() = default;
  explicit SpectrumVector(RealVector values);

  Index size() const { return values_.size(); }
  const RealVector& values() const { return values_; }
  double operator[](Index i) const { return values_[i]; }

 private:
  RealVector values_;
};

}  // namespace meanforge

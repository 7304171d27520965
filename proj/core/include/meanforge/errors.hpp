#pragma once

#include <stdexcept>
#include <string>

namespace meanforge {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or produced non-finite values.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the mathematical domain of the operation
/// (e.g. fractional power of an indefinite matrix, ill-conditioned mean).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be Hermitian is too far from its adjoint.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// Matrix operands have incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Vector operands have different lengths.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A vector entry is negative where nonnegativity is required.
class NegativeEntry : public Error {
 public:
  using Error::Error;
};

/// A statement parameter lies outside the admissible range.
class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

/// An index is outside the valid range.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A pair of matrices expected to commute does not.
class NotCommuting : public Error {
 public:
  using Error::Error;
};

/// A campaign configuration is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace meanforge

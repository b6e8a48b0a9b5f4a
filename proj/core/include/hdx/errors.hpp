#pragma once

#include <stdexcept>
#include <string>

namespace hdx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad weights, wrong level, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidParametersError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A desk-scale guard (face count, q^n) was exceeded.
class ResourceLimitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The structure needed by an operation does not exist (e.g. d < 4k for FKN).
class StructuralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The spectrum of a link is undefined (fewer than two vertices).
class UndefinedSpectrumError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Decomposition was requested on a complex whose D U is singular at some level.
class PropernessError : public ValidationError {
 public:
  PropernessError(const std::string& what, int level)
      : ValidationError(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// A numerical certificate (residual, symmetry) failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdx

#pragma once

#include <stdexcept>
#include <string>

namespace ricomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. a <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: rank deficiency, loss of positive definiteness,
/// degenerate scale, zero denominators.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateScaleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed or inconsistent input data (files, shapes, non-finite cells).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace ricomp

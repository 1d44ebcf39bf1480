#pragma once

#include <stdexcept>
#include <string>

namespace hyperwave {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (bad parameters, poles).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable in double precision.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Base of the numerical failures a run can hit (exit status 2 in the CLI).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Integrand or profile did not decay before the end of its grid.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CalibrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive step control gave up; `where()` is the radius reached.
class StepControlError : public NumericalError {
 public:
  StepControlError(const std::string& what, double where)
      : NumericalError(what), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_;
};

}  // namespace hyperwave

#pragma once

#include <stdexcept>
#include <string>

namespace goldgen {

// Base of every error raised by the library. The CLI maps subclasses to exit
// codes: DomainError/ConfigError -> 2, everything numerical -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class DegenerateZeros : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RootSolveFailed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateModes : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TreeBudgetExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TrackingAmbiguity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoPeriodFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepSizeUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Two positions got closer than the separation tolerance. `level` is the
// generation depth at which it happened (0 = the integrated coordinates).
class CollisionError : public NumericalError {
 public:
  CollisionError(const std::string& what, int level, double time = 0.0)
      : NumericalError(what), level_(level), time_(time) {}

  int level() const noexcept { return level_; }
  double time() const noexcept { return time_; }

 private:
  int level_;
  double time_;
};

}  // namespace goldgen

#pragma once

#include <stdexcept>
#include <string>

namespace majorant_lab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a precondition. `parameter()` names it.
class ValidationError : public Error {
 public:
  ValidationError(std::string parameter, const std::string& message);

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// A grid or convolution would exceed the configured memory budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not settle before hitting its grid budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double previous, double last);

  double previous_value() const noexcept { return previous_; }
  double last_value() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

/// An experiment exceeded its per-trial failure allowance.
class ExperimentFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace majorant_lab

#pragma once

#include <stdexcept>
#include <string>

namespace nsse {

// Bad parameters or grids; the CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value that does not fit in a double was requested in unscaled form.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Adaptive quadrature gave up before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace nsse

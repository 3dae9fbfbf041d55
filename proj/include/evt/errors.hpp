#pragma once

#include <stdexcept>
#include <string>

namespace evt {

// Numeric failures callers are expected to catch and map to outcomes
// (the CLI maps them to exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An integral keeps growing under refinement, or a closed form's validity
// constraint predicts a divergent integral.
class DivergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The refinement/expansion budget was exhausted before reaching tolerance.
class NoConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A survival probability underflowed to zero where a positive tail is needed.
class DegenerateTailError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The integrand produced NaN.
class IntegrandError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace evt

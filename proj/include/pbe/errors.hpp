#pragma once

#include <stdexcept>
#include <string>

namespace pbe {

// Base for failures of the closed-form algebra.
struct algebra_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested combination has no closed form in this algebra
// (e.g. convolving terms with different decay rates).
struct unsupported_combination : algebra_error {
  using algebra_error::algebra_error;
};

// A canonicalized polynomial exceeded the per-polynomial term cap.
struct term_budget_exceeded : algebra_error {
  using algebra_error::algebra_error;
};

}  // namespace pbe

#pragma once

#include <stdexcept>
#include <string>

namespace bivop {

// Invalid family or kernel parameters (q outside (0,1), beta <= -1, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Index outside the stated range of an identity; a skip, not a failure.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Jacobi matrix cannot be symmetrized (non-positive off-diagonal product).
struct NumericalValidityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegeneratePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bivop

#pragma once

#include <stdexcept>
#include <string>

namespace lnfade {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Input is well-typed but carries no information (zero variance, empty trace).
struct DegenerateInputError : DomainError {
  using DomainError::DomainError;
};

// Operation called with a configuration it does not support.
struct UsageError : std::logic_error {
  using std::logic_error::logic_error;
};

// An expected delivery time is infinite (erasure probability stuck at 1).
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A simulated episode exceeded its slot cap.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lnfade

#pragma once

#include <stdexcept>
#include <string>

namespace qrdom {

// Error classes thrown by the core. The C API maps each onto a status code.

/// Malformed or invalid user input (configuration, flags, functional specs).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation precondition (out-of-domain point, bad index).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite values, rank-deficient fits, failed inner closures.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iteration exhausted its cap without meeting its criterion.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrdom

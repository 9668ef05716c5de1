#pragma once

#include <stdexcept>
#include <string>

namespace hdecay {

// Argument outside the mathematical domain of an operation (t <= 0, p < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated a documented precondition (bad profile, empty sweep, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A self-check inside the library failed (normalization drift, quadrature blow-up).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hdecay

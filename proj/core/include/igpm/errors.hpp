#pragma once

#include <stdexcept>
#include <string>

namespace igpm {

/// A caller broke a documented precondition (dimension mismatch, infeasible
/// point, non-positive radius, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Backtracking could not find an Armijo step: the search direction was not
/// a descent direction.
class DegenerateDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace igpm

#pragma once

#include <stdexcept>
#include <string>

namespace ecbures {

/// Raised when an argument violates a documented precondition (dimensions,
/// validity predicates, energy bounds).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical routine cannot meet its accuracy contract.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ecbures

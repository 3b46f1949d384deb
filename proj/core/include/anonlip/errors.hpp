#pragma once

#include <stdexcept>

namespace anonlip {

// Invalid parameters are reported with std::invalid_argument. The types
// below cover the remaining failure modes.

/// Two independent computations of the same quantity disagreed.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive computation was refused because it exceeds its size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A root finder could not establish or keep a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anonlip

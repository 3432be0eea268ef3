#pragma once

#include <stdexcept>
#include <string>

namespace complab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad parameters, malformed input).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured row budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that must hold on valid inputs failed to hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace complab

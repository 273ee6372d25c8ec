#pragma once

#include <stdexcept>
#include <string>

namespace charmat {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition or type invariant does not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NotHermitian : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

// The operator has a nontrivial kernel where injectivity is required.
class KernelNontrivial : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

// A factorization or solve broke down. For the inputs the library accepts this
// cannot happen in exact arithmetic, so it always signals rounding trouble.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace charmat

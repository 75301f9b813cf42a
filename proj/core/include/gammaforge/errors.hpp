#pragma once

#include <stdexcept>
#include <string>

namespace gammaforge {

// Argument outside the mathematical domain (ln of a non-positive number,
// division by zero). Always a caller bug.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition on a non-domain argument was violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative scheme hit its cap before meeting the tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An asymptotic expansion cannot reach the requested accuracy even at its
// optimal truncation point; the caller must use a convergent route.
class InsufficientAccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series parameter hit a pole (e.g. hypergeometric c at a non-positive integer).
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace gammaforge

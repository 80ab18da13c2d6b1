#pragma once

#include <stdexcept>
#include <string>

namespace locmult {

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (functions, fractions, derivation terms).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructed object failed its own postcondition check. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace locmult

#pragma once

#include <stdexcept>
#include <string>

namespace klpat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: element text, parabolic specs, type names, cache lines.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed the configured enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Precondition of an operation does not hold (e.g. mu(x,w) with x not below w).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A theorem was asked for outside its hypotheses.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Checked integer arithmetic wrapped around.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace klpat

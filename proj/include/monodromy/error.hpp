#pragma once

#include <stdexcept>
#include <string>

namespace monodromy {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A prime-to-p (or similar) hypothesis of the local convolution formulas
/// does not hold for the given input.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Not enough known t^{-1}-adic digits to produce a result.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Newton lifting was asked to lift a multiple root.
class SingularRoot : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (e.g. lifting a non-root).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace monodromy

#pragma once

#include <stdexcept>
#include <string>

namespace elrc {

/// Base class for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (r, m) outside the supported range, or the length cap is exceeded.
class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class InvalidCoordinate : public Error {
 public:
  using Error::Error;
};

/// Raised by T/L-set queries on a coordinate that lies in the information set.
class NotParityCoordinate : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A plan step is malformed or reads a symbol that is still erased.
class PlanOrderViolation : public Error {
 public:
  using Error::Error;
};

/// Repaired word fails the parity checks: the surviving symbols were not a codeword restriction.
class InconsistentInput : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace elrc

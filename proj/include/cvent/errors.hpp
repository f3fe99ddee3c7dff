#pragma once

#include <stdexcept>
#include <string>

namespace cvent {

// Every failure raised by the library derives from Error so callers can
// catch the whole family in one place (the CLI maps them to exit codes).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Probability mass pushed past the Fock cutoff exceeded the tail tolerance.
class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

// Normalizing a zero (or numerically zero) vector.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class NumericalInstability : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace cvent

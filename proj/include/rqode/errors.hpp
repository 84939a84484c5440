#pragma once

#include <stdexcept>
#include <string>

namespace rqode {

// Base for everything thrown by this library. Context added by outer frames
// is prepended to the original message so failures carry their (level, step,
// sample) location by the time they reach the CLI.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Invalid user-facing configuration (bad grid, bad mode, unknown name).
// The CLI maps these to exit code 2.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class UnknownProblem : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

class InvalidRequest : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

class InvalidPlan : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

// Numerical failures during a run. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroJet : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OutOfDomain : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridMismatch : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OracleFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace rqode

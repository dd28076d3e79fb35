#pragma once

#include <stdexcept>

namespace fermat5 {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
struct ArgumentError : Error {
  using Error::Error;
};

// An operation was invoked on an object in the wrong state
// (e.g. a curve that has not passed validation).
struct StateError : Error {
  using Error::Error;
};

// A configurable size bound would be exceeded.
struct BoundError : Error {
  using Error::Error;
};

// A file could not be read or written.
struct IoError : Error {
  using Error::Error;
};

// A data file was read but failed validation.
struct DataError : Error {
  using Error::Error;
};

// factorize() gave up on a cofactor that resisted the rho budget.
struct IncompleteFactorization : Error {
  using Error::Error;
};

}  // namespace fermat5

#pragma once

#include <stdexcept>
#include <string>

namespace heavysum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad parameter domain, unparsable spec, violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside the domain where it is defined
/// (e.g. a negative-mean bound on a nonnegative-mean law).
class PreconditionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A criterion does not apply to the given input (e.g. hazard rate not vanishing).
class InapplicableError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A tail integral or series failed to converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Cell budget, series truncation budget or population cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A Monte Carlo estimate whose truncation rate makes it unusable.
class InvalidEstimateError : public Error {
 public:
  using Error::Error;
};

}  // namespace heavysum

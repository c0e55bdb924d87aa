#pragma once

#include <stdexcept>
#include <string>

namespace entsep {

// Base of everything the library throws. The CLI maps the subclasses onto
// exit codes, so new error kinds should derive from one of them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: wrong lengths, non-finite values,
// out-of-range angles, non-unitary matrices, bad probabilities.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Index or axis outside the tensor's shape.
class BoundsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A documented precondition on an otherwise well-formed input failed
// (zero tensor, norm far from one, non-qubit dims where qubits are required).
class PreconditionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Work or memory would exceed a configured guard.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace entsep

#pragma once

#include <stdexcept>
#include <string>

namespace hypercom {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: empty systems, nonpositive masses, points off the surface.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the model domain, e.g. a disk point with |w| >= R.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A construction that needs two distinct points received coincident ones.
class DegenerateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Floating point trouble that valid input should not have produced.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypercom

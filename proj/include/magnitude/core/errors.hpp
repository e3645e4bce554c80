#pragma once

#include <stdexcept>
#include <string>

namespace mag {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroQuadraticForm : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivisionByZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An internal identity that must hold exactly was violated.
class AssertionFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SectionNotContained : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Work would exceed a configured size cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Requested projection dimension is beyond what the hull routines support.
class DimensionTooLarge : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

}  // namespace mag

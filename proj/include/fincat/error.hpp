#pragma once

#include <stdexcept>
#include <string>

namespace fincat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A table refers to an id that does not exist, or has the wrong shape.
class MalformedTable : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search hit its node budget before reaching a verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A bounded closure stopped at its round or size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same object disagreed.
class InternalMismatch : public Error {
 public:
  using Error::Error;
};

/// Profunctor endpoints do not line up for the requested operation.
class EndpointMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace fincat

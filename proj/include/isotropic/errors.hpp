#pragma once

#include <stdexcept>
#include <string>

namespace iso {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input to a constructor (unknown type, bad rank, bad ring spec).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate the constraints of a classical family.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The combination is outside what this library models.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search went over its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure; indicates a bug or bad table data.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace iso

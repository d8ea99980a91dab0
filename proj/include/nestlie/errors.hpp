#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nestlie {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad JSON, invalid nest blocks, unparsable rationals.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class NotInAlgebra : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when a computation would enumerate more tuples than the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t allowed, const std::string& what)
      : Error(what + ": requires " + std::to_string(required) + " tuples, budget is " +
              std::to_string(allowed)),
        required_(required),
        allowed_(allowed) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t allowed() const noexcept { return allowed_; }

 private:
  std::uint64_t required_;
  std::uint64_t allowed_;
};

class RouteInapplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace nestlie

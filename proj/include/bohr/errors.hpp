#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A prime factor or a variable position lies outside the configured table.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic would wrap around.
class Overflow : public Error {
 public:
  using Error::Error;
};

class UnsortedInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateDegree : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class HorizonTooSmall : public Error {
 public:
  using Error::Error;
};

class BadBase : public Error {
 public:
  using Error::Error;
};

/// Malformed input document; `where()` names the line and/or field.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace bohr

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spanlab {

// Base of every error the library throws. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition on a geometric primitive (coincident points, bad cone width).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Parameter or configuration rejected before any work is done.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UsageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed instance/config text; carries the 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Shortest-path query between vertices in different components.
class DisconnectedPair : public Error {
 public:
  DisconnectedPair() : Error("disconnected pair") {}
};

// A library invariant failed; indicates a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace spanlab

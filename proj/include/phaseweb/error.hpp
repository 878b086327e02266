#pragma once

#include <stdexcept>
#include <string>

namespace pw {

// Base class for all domain errors raised by the library. The CLI maps
// these to exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when two values built over different sensor universes meet.
class UniverseMismatch : public Error {
 public:
  UniverseMismatch(int lhs, int rhs)
      : Error("incompatible sensor sets: universe " + std::to_string(lhs) +
              " vs " + std::to_string(rhs)) {}
};

// Expression syntax error with 1-based position information.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace pw

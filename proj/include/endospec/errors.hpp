#pragma once

#include <stdexcept>
#include <string>

namespace endospec {

// Base class for all domain errors raised by the library. The library never
// terminates the process; errors are thrown as values and rendered at the
// boundary (CLI, tests).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankMismatchError : public Error {
 public:
  using Error::Error;
};

class NotInSubgroupError : public Error {
 public:
  using Error::Error;
};

class NotInvariantError : public Error {
 public:
  using Error::Error;
};

class InfiniteIndexError : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomialError : public Error {
 public:
  using Error::Error;
};

class ZeroDivisorError : public Error {
 public:
  using Error::Error;
};

class DegreeZeroError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

class LengthBudgetError : public Error {
 public:
  using Error::Error;
};

class RankTooSmallError : public Error {
 public:
  using Error::Error;
};

// Input-language failure with source position (1-based line and column).
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class UnknownGeneratorError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Raised when a computed value contradicts a mathematically guaranteed
// invariant; always indicates an implementation bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace endospec

#pragma once

#include <stdexcept>
#include <string>

namespace stlsmooth {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grammar violation in formula text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnknownIdentifierError : public Error {
 public:
  using Error::Error;
};

/// Temporal interval with negative bounds or t2 < t1.
class IntervalError : public Error {
 public:
  using Error::Error;
};

/// Signal too short for the formula evaluated at the requested time.
class HorizonError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or a diverged computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument or configuration (bad k, non-NNF input, bad JSON field).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stlsmooth

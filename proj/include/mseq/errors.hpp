#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mseq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrimePower : public Error {
 public:
  using Error::Error;
};

class ReducibleModulus : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DegenerateSimplex : public Error {
 public:
  using Error::Error;
};

class UnknownSuite : public Error {
 public:
  using Error::Error;
};

/// Symbol outside [0, q) in some row/position of a multisequence.
class FieldError : public Error {
 public:
  FieldError(const std::string& what, std::size_t row, std::size_t position)
      : Error(what), row_(row), position_(position) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t row_;
  std::size_t position_;
};

/// Malformed text input; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mseq

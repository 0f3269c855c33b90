#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mclex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix or relation shape (zero rows, ragged columns, wrong row count).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A matrix without variables, or with a non-positive variable index.
class VariableError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a generator (e.g. M_n with n < 3).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Row index out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured search cap was exceeded. Never used to silently truncate.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace mclex

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmerge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Formula text does not conform to the grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        message_(what),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// A variable is missing from the universe an operation was asked to use.
class UniverseError : public Error {
 public:
  using Error::Error;
};

// A brute-force enumeration would exceed a configured limit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A knowledge profile violates its preconditions (unsatisfiable bounds).
class ProfileError : public Error {
 public:
  using Error::Error;
};

// A transformation or transformation set is malformed or not applicable.
class TransformError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmerge

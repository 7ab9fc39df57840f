#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  Syntax,
  UndeclaredOperator,
  ArityMismatch,
  QueryKindMismatch,
  ReservedPrefix,
  DuplicateOperator,
};

// Malformed input text: instance files, operator declarations, QDIMACS, witnesses.
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configurable search or enumeration budget was exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace subalc

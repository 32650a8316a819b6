#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wlpa {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind { Syntax, DuplicateId, DanglingEndpoint, BadWeight };

/// Malformed graph file or expression. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::string message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Violated graph invariant or lookup of an unknown vertex/edge.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// A construction was handed a graph outside its domain; clause() names the failed condition.
class PreconditionViolated : public Error {
 public:
  explicit PreconditionViolated(std::string clause)
      : Error("precondition violated: " + clause), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

/// Elements from different algebras (graph or special-edge choice) were combined.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid generator (unknown vertex/edge or strand index out of range).
class InvalidLetter : public Error {
 public:
  using Error::Error;
};

/// A postcondition guaranteed by the mathematics failed; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace wlpa

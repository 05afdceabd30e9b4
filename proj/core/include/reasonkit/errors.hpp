#pragma once

#include <stdexcept>
#include <string>

namespace reasonkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text, tree document, groups file, or instance syntax.
/// Carries a 1-based source position when one is known (0 = unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

/// Well-formed input that violates a document contract: repeated test on a
/// tree path, overlapping one-hot groups, a leaf class outside {0,1}, ...
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Formulas, instances, or node handles mixed across incompatible variable
/// universes, or an identifier that is not part of the declared universe.
class UniverseError : public Error {
 public:
  using Error::Error;
};

/// The node manager hit its configured node budget. Signals resource
/// exhaustion, not invalid input.
class NodeBudgetError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked outside its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The queried instance falsifies the constraint (and forcing was not
/// requested or not applicable).
class OutOfConstraintError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The queried instance is a negative decision and the dual explanation
/// was not requested.
class NegativeInstanceError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace reasonkit

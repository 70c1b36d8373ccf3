#ifndef STRATUS_ERRORS_HPP
#define STRATUS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace stratus {

// Base class for all errors raised by the library. Domain outcomes that the
// caller is expected to branch on (conflict cycles, validation reports,
// NotFound) are returned as values, not thrown.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed surface text. Carries the position and the token set the parser
// would have accepted at that point.
class ParseError : public Error {
public:
  ParseError(std::string msg, int line, int column, std::vector<std::string> expected)
      : Error(format(msg, line, column, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  static std::string format(const std::string& msg, int line, int column,
                            const std::vector<std::string>& expected);

  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// Structurally well-formed input that violates a precondition (unknown node
// id, non-total function table, cyclic input to collapse, ...).
class InputError : public Error {
public:
  using Error::Error;
};

// An exhaustive search larger than the configured budget.
class BudgetError : public Error {
public:
  using Error::Error;
};

}  // namespace stratus

#endif

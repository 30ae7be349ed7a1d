#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wavefill {

/// Input that violates a documented invariant (bad graph, malformed problem).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wavefill

namespace wavefill {

/// Malformed input file. `line` is 0 when the JSON is syntactically valid
/// and the problem is a field's type or shape; `field` is a JSON pointer.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, int line, std::string field)
      : ValidationError(message), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_ = 0;
  std::string field_;
};

}  // namespace wavefill

#pragma once

#include <stdexcept>
#include <string>

namespace rtabs {

/// Errors raised while evaluating functional expressions, guards or
/// scheduling policies.
class EvalError : public std::runtime_error {
 public:
  enum class Kind {
    MatchFailure,
    UnboundVariable,
    DivisionByZero,
    TypeError,
    UnknownFunction,
    RecursionLimit,
    PolicyError,
  };

  EvalError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(EvalError::Kind kind);

}  // namespace rtabs

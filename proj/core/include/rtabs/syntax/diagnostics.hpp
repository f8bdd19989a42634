#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rtabs/syntax/ast.hpp"

namespace rtabs::syntax {

enum class Severity { Error, Warning };

struct Diagnostic {
  SourcePos pos;
  Severity severity = Severity::Error;
  std::string message;

  /// `file:line:col: severity: message`
  std::string str() const;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);

/// Thrown by the parser on the first syntax error.
class ParseError : public std::runtime_error {
 public:
  ParseError(Diagnostic diag, std::vector<std::string> expected)
      : std::runtime_error(diag.str()), diag_(std::move(diag)), expected_(std::move(expected)) {}

  const Diagnostic& diagnostic() const { return diag_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Diagnostic diag_;
  std::vector<std::string> expected_;
};

}  // namespace rtabs::syntax

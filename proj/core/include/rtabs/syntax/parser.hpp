#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rtabs/syntax/ast.hpp"
#include "rtabs/syntax/diagnostics.hpp"

namespace rtabs::syntax {

/// Parses a complete model. Throws ParseError (with position and the set
/// of expected tokens) on the first syntax error.
Model parse_model(std::string_view source, const std::string& file_name = "<input>");

struct ParseResult {
  std::optional<Model> model;
  Diagnostics diagnostics;
};

/// Non-throwing variant of parse_model.
ParseResult try_parse_model(std::string_view source, const std::string& file_name = "<input>");

/// Parses a single expression (used by tests and the policy bridge).
ExprPtr parse_expression(std::string_view source, const std::string& file_name = "<expr>");

/// Parses a single pattern.
Pattern parse_pattern(std::string_view source, const std::string& file_name = "<pattern>");

}  // namespace rtabs::syntax

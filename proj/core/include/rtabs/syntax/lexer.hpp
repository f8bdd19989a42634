#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rtabs/syntax/ast.hpp"

namespace rtabs::syntax {

enum class TokenKind {
  Identifier,
  Integer,
  Rational,  // `p/q` written without spaces
  String,
  Symbol,
  End,
};

struct Token {
  TokenKind kind;
  std::string text;  // symbol spelling, identifier, digits, or unescaped string
  SourcePos pos;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_symbol(std::string_view t) const { return is(TokenKind::Symbol, t); }
  bool is_word(std::string_view t) const { return is(TokenKind::Identifier, t); }
  std::string describe() const;
};

/// Splits source text into tokens. `//` and `/* */` comments are skipped;
/// `∧`, `≤` and `≥` are read as `&&`, `<=` and `>=`. Throws ParseError on
/// an unterminated string or comment, or a stray character.
std::vector<Token> tokenize(std::string_view source, std::shared_ptr<const std::string> file);

}  // namespace rtabs::syntax

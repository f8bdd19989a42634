#include "rtabs/syntax/lexer.hpp"

#include <array>
#include <cctype>

#include "rtabs/syntax/diagnostics.hpp"

namespace rtabs::syntax {

std::string Token::describe() const {
  switch (kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string literal";
    case TokenKind::Integer:
    case TokenKind::Rational: return "'" + text + "'";
    default: return "'" + text + "'";
  }
}

namespace {

class Lexer {
 public:
  Lexer(std::string_view src, std::shared_ptr<const std::string> file)
      : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      SourcePos start = here();
      if (at_end()) {
        out.push_back({TokenKind::End, "", start});
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          word += advance();
        }
        out.push_back({TokenKind::Identifier, std::move(word), start});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number(start));
      } else if (c == '"') {
        out.push_back(string_literal(start));
      } else {
        out.push_back(symbol(start));
      }
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;  // count code points, not bytes
    }
    return c;
  }
  SourcePos here() const { return SourcePos{file_, line_, col_}; }

  [[noreturn]] void fail(SourcePos pos, const std::string& message) {
    throw ParseError(Diagnostic{std::move(pos), Severity::Error, message}, {});
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourcePos start = here();
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end()) fail(start, "unterminated block comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token number(SourcePos start) {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
    if (peek() == '/' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      digits += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
      return {TokenKind::Rational, std::move(digits), start};
    }
    return {TokenKind::Integer, std::move(digits), start};
  }

  Token string_literal(SourcePos start) {
    advance();  // opening quote
    std::string text;
    while (true) {
      if (at_end() || peek() == '\n') fail(start, "unterminated string literal");
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail(start, "unterminated string literal");
        char e = advance();
        switch (e) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case '"': text += '"'; break;
          case '\\': text += '\\'; break;
          default: fail(start, std::string("unknown escape \\") + e);
        }
      } else {
        text += c;
      }
    }
    return {TokenKind::String, std::move(text), start};
  }

  Token symbol(SourcePos start) {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 3> kUnicode = {{
        {"\xE2\x88\xA7", "&&"},  // ∧
        {"\xE2\x89\xA4", "<="},  // ≤
        {"\xE2\x89\xA5", ">="},  // ≥
    }};
    for (const auto& [utf8, ascii] : kUnicode) {
      if (src_.substr(pos_, utf8.size()) == utf8) {
        for (std::size_t i = 0; i < utf8.size(); ++i) advance();
        return {TokenKind::Symbol, std::string(ascii), start};
      }
    }
    static constexpr std::array<std::string_view, 8> kTwoChar = {"<=", ">=", "==", "!=", "&&",
                                                                 "||", "=>", ":="};
    for (auto sym : kTwoChar) {
      if (src_.substr(pos_, 2) == sym) {
        advance();
        advance();
        // `:=` is accepted as a synonym for `=` in assignments.
        return {TokenKind::Symbol, sym == ":=" ? std::string("=") : std::string(sym), start};
      }
    }
    static constexpr std::string_view kSingle = "(){}[]<>=;,:.!?+-*/%|";
    char c = peek();
    if (kSingle.find(c) != std::string_view::npos) {
      advance();
      return {TokenKind::Symbol, std::string(1, c), start};
    }
    fail(start, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::shared_ptr<const std::string> file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, std::shared_ptr<const std::string> file) {
  return Lexer(source, std::move(file)).run();
}

}  // namespace rtabs::syntax

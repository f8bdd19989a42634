#include "rtabs/syntax/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "rtabs/syntax/lexer.hpp"

namespace rtabs::syntax {

namespace {

constexpr std::array<std::string_view, 21> kKeywords = {
    "skip",  "suspend", "return", "if",   "while", "await",     "duration",   "new",
    "case",  "this",    "now", "null",  "else",      "then",       "data",
    "def",   "class",   "interface", "implements", "True", "False"};

bool is_keyword(std::string_view w) {
  return std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

bool starts_upper(std::string_view w) {
  return !w.empty() && std::isupper(static_cast<unsigned char>(w[0]));
}

// Marker function name for `x?` while a guard is parsed as an expression.
constexpr std::string_view kFutureMarker = "?";

class Parser {
 public:
  Parser(std::string_view source, const std::string& file_name)
      : tokens_(tokenize(source, std::make_shared<const std::string>(file_name))) {}

  Model model() {
    Model m;
    while (!at_end()) {
      if (peek().is_word("data")) {
        m.datatypes.push_back(data_decl());
      } else if (peek().is_word("def")) {
        m.functions.push_back(function_decl());
      } else if (peek().is_word("interface")) {
        m.interfaces.push_back(interface_decl());
      } else if (peek().is_symbol("[") || peek().is_word("class")) {
        m.classes.push_back(class_decl());
      } else if (peek().is_symbol("{")) {
        if (m.main) fail({"end of input"});
        m.main = body();
      } else {
        fail({"'data'", "'def'", "'interface'", "'class'", "'['", "'{'", "end of input"});
      }
    }
    return m;
  }

  ExprPtr single_expression() {
    ExprPtr e = expression();
    expect_end();
    return e;
  }

  Pattern single_pattern() {
    Pattern p = pattern();
    expect_end();
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string msg = "unexpected " + t.describe() + ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw ParseError(Diagnostic{t.pos, Severity::Error, msg}, std::move(expected));
  }
  [[noreturn]] void fail_at(const SourcePos& pos, const std::string& msg) const {
    throw ParseError(Diagnostic{pos, Severity::Error, msg}, {});
  }

  void expect_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) fail({"'" + std::string(s) + "'"});
    advance();
  }
  void expect_word(std::string_view w) {
    if (!peek().is_word(w)) fail({"'" + std::string(w) + "'"});
    advance();
  }
  bool accept_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) return false;
    advance();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!peek().is_word(w)) return false;
    advance();
    return true;
  }
  void expect_end() {
    if (!at_end()) fail({"end of input"});
  }

  std::string identifier(const char* what = "identifier") {
    if (peek().kind != TokenKind::Identifier || is_keyword(peek().text)) fail({what});
    return advance().text;
  }
  std::string callable_name() { return identifier("name"); }

  Rational number_literal() {
    const Token& t = advance();
    try {
      return Rational::parse(t.text);
    } catch (const std::invalid_argument& e) {
      fail_at(t.pos, e.what());
    }
  }

  // --- types ----------------------------------------------------------------

  std::optional<TypeRef> try_type() {
    if (peek().kind != TokenKind::Identifier || is_keyword(peek().text)) return std::nullopt;
    TypeRef t{advance().text, {}};
    if (peek().is_symbol("<")) {
      std::size_t save = pos_;
      advance();
      while (true) {
        auto arg = try_type();
        if (!arg) {
          pos_ = save;
          return t;
        }
        t.args.push_back(std::move(*arg));
        if (accept_symbol(",")) continue;
        if (accept_symbol(">")) break;
        pos_ = save;
        return t;
      }
    }
    return t;
  }

  TypeRef type() {
    auto t = try_type();
    if (!t) fail({"type"});
    return *t;
  }

  std::vector<Param> params() {
    std::vector<Param> out;
    expect_symbol("(");
    if (accept_symbol(")")) return out;
    while (true) {
      SourcePos pos = peek().pos;
      TypeRef t = type();
      std::string name = identifier("parameter name");
      out.push_back(Param{std::move(t), std::move(name), pos});
      if (accept_symbol(")")) return out;
      expect_symbol(",");
    }
  }

  std::vector<std::string> type_params() {
    std::vector<std::string> out;
    if (!accept_symbol("<")) return out;
    while (true) {
      out.push_back(identifier("type parameter"));
      if (accept_symbol(">")) return out;
      expect_symbol(",");
    }
  }

  // --- declarations -----------------------------------------------------------

  DataDecl data_decl() {
    SourcePos pos = peek().pos;
    expect_word("data");
    DataDecl d;
    d.pos = pos;
    d.name = identifier("datatype name");
    d.type_params = type_params();
    if (accept_symbol("=")) {
      while (true) {
        ConstructorDecl c;
        c.pos = peek().pos;
        c.name = identifier("constructor name");
        if (accept_symbol("(")) {
          if (!accept_symbol(")")) {
            while (true) {
              ConstructorArg arg{type(), std::nullopt};
              if (peek().kind == TokenKind::Identifier && !is_keyword(peek().text)) {
                arg.name = advance().text;
              }
              c.args.push_back(std::move(arg));
              if (accept_symbol(")")) break;
              expect_symbol(",");
            }
          }
        }
        d.constructors.push_back(std::move(c));
        if (!accept_symbol("|")) break;
      }
    }
    expect_symbol(";");
    return d;
  }

  FunctionDecl function_decl() {
    SourcePos pos = peek().pos;
    expect_word("def");
    FunctionDecl f;
    f.pos = pos;
    f.return_type = type();
    f.name = callable_name();
    f.type_params = type_params();
    f.params = params();
    expect_symbol("=");
    f.body = expression();
    expect_symbol(";");
    return f;
  }

  MethodSig method_sig() {
    MethodSig sig;
    sig.pos = peek().pos;
    sig.return_type = type();
    sig.name = callable_name();
    sig.params = params();
    return sig;
  }

  InterfaceDecl interface_decl() {
    SourcePos pos = peek().pos;
    expect_word("interface");
    InterfaceDecl i;
    i.pos = pos;
    i.name = identifier("interface name");
    expect_symbol("{");
    while (!accept_symbol("}")) {
      i.methods.push_back(method_sig());
      expect_symbol(";");
    }
    return i;
  }

  AnnotationSet annotations() {
    AnnotationSet set;
    while (peek().is_symbol("[")) {
      advance();
      while (true) {
        SourcePos pos = peek().pos;
        std::string kind_name = identifier("annotation name");
        AnnotationKind kind;
        if (kind_name == "Deadline") {
          kind = AnnotationKind::Deadline;
        } else if (kind_name == "Cost") {
          kind = AnnotationKind::Cost;
        } else if (kind_name == "Critical") {
          kind = AnnotationKind::Critical;
        } else if (kind_name == "Scheduler") {
          kind = AnnotationKind::Scheduler;
        } else {
          fail_at(pos, "unknown annotation '" + kind_name +
                           "', expected Deadline, Cost, Critical or Scheduler");
        }
        expect_symbol(":");
        set.items.push_back(Annotation{pos, kind, expression()});
        if (accept_symbol("]")) break;
        expect_symbol(",");
      }
    }
    return set;
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.annotations = annotations();
    c.pos = peek().pos;
    expect_word("class");
    c.name = identifier("class name");
    if (peek().is_symbol("(")) c.params = params();
    if (accept_word("implements")) {
      do {
        c.interfaces.push_back(identifier("interface name"));
      } while (accept_symbol(","));
    }
    expect_symbol("{");
    while (!accept_symbol("}")) {
      AnnotationSet ann = annotations();
      SourcePos pos = peek().pos;
      TypeRef t = type();
      std::string name = callable_name();
      if (peek().is_symbol("(")) {
        MethodDecl m;
        m.annotations = std::move(ann);
        m.sig.pos = pos;
        m.sig.return_type = std::move(t);
        m.sig.name = std::move(name);
        m.sig.params = params();
        m.body = body();
        c.methods.push_back(std::move(m));
      } else {
        if (!ann.empty()) fail_at(ann.items.front().pos, "annotations are not allowed on fields");
        if (is_keyword(name)) fail_at(pos, "'" + name + "' cannot name a field");
        FieldDecl f{std::move(t), std::move(name), nullptr, pos};
        if (accept_symbol("=")) f.init = expression();
        expect_symbol(";");
        c.fields.push_back(std::move(f));
      }
    }
    return c;
  }

  // --- statements -------------------------------------------------------------

  Body body() {
    Body b;
    Body* saved = body_;
    body_ = &b;
    b.stmts = block();
    body_ = saved;
    return b;
  }

  Block block() {
    expect_symbol("{");
    Block out;
    while (!accept_symbol("}")) {
      if (auto s = statement()) out.push_back(std::move(s));
    }
    return out;
  }

  /// `T x` followed by `=` or `;` starts a declaration.
  std::optional<TypeRef> try_declaration_head() {
    std::size_t save = pos_;
    auto t = try_type();
    if (t && peek().kind == TokenKind::Identifier && !is_keyword(peek().text) &&
        (peek(1).is_symbol("=") || peek(1).is_symbol(";"))) {
      return t;
    }
    pos_ = save;
    return std::nullopt;
  }

  StmtPtr statement() {
    SourcePos pos = peek().pos;
    AnnotationSet ann = annotations();
    if (!ann.empty()) {
      if (peek().is_word("await")) return await_statement(pos, std::move(ann));
      return assignment(pos, std::move(ann));
    }
    const Token& t = peek();
    if (t.is_word("skip")) {
      advance();
      expect_symbol(";");
      return make_stmt(pos, SkipStmt{});
    }
    if (t.is_word("suspend")) {
      advance();
      expect_symbol(";");
      return make_stmt(pos, SuspendStmt{});
    }
    if (t.is_word("return")) {
      advance();
      ExprPtr e = expression();
      expect_symbol(";");
      return make_stmt(pos, ReturnStmt{std::move(e)});
    }
    if (t.is_word("if")) return if_statement();
    if (t.is_word("while")) {
      advance();
      ExprPtr cond = expression();
      Block b = block();
      return make_stmt(pos, WhileStmt{std::move(cond), std::move(b)});
    }
    if (t.is_word("await")) return await_statement(pos, {});
    if (t.is_word("duration") && peek(1).is_symbol("(")) {
      advance();
      expect_symbol("(");
      ExprPtr best = expression();
      expect_symbol(",");
      ExprPtr worst = expression();
      expect_symbol(")");
      expect_symbol(";");
      return make_stmt(pos, DurationStmt{std::move(best), std::move(worst)});
    }
    return assignment(pos, {});
  }

  StmtPtr if_statement() {
    SourcePos pos = peek().pos;
    expect_word("if");
    ExprPtr cond = expression();
    Block then_block = block();
    std::optional<Block> else_block;
    if (accept_word("else")) {
      if (peek().is_word("if")) {
        else_block = Block{if_statement()};
      } else {
        else_block = block();
      }
    }
    return make_stmt(pos, IfStmt{std::move(cond), std::move(then_block), std::move(else_block)});
  }

  StmtPtr await_statement(SourcePos pos, AnnotationSet ann) {
    expect_word("await");
    std::size_t save = pos_;
    std::optional<TypeRef> decl = try_declaration_head();
    bool is_call = false;
    if (decl) {
      is_call = true;
    } else if (peek().kind == TokenKind::Identifier && !is_keyword(peek().text) &&
               peek(1).is_symbol("=")) {
      is_call = true;
    }
    if (is_call) {
      std::string target = identifier();
      expect_symbol("=");
      ExprPtr callee = expression();
      expect_symbol(".");
      std::string method = callable_name();
      std::vector<ExprPtr> args = call_args();
      expect_symbol(";");
      if (decl) declare_local(*decl, target, pos, /*has_init=*/true);
      return make_stmt(pos, AwaitCallStmt{std::move(ann), std::move(decl), std::move(target),
                                          std::move(callee), std::move(method), std::move(args)});
    }
    pos_ = save;
    if (!ann.empty()) fail_at(ann.items.front().pos, "annotations are not allowed on await guards");
    GuardPtr g = guard();
    expect_symbol(";");
    return make_stmt(pos, AwaitStmt{std::move(g)});
  }

  StmtPtr assignment(SourcePos pos, AnnotationSet ann) {
    std::optional<TypeRef> decl = try_declaration_head();
    std::optional<std::string> target;
    if (decl) {
      target = identifier();
      if (accept_symbol(";")) {
        if (!ann.empty()) fail_at(ann.items.front().pos, "annotation without an assignment");
        declare_local(*decl, *target, pos, /*has_init=*/false);
        return nullptr;
      }
      expect_symbol("=");
      declare_local(*decl, *target, pos, /*has_init=*/true);
    } else if (peek().kind == TokenKind::Identifier && !is_keyword(peek().text) &&
               peek(1).is_symbol("=")) {
      target = advance().text;
      advance();
    }
    Rhs r = rhs();
    expect_symbol(";");
    if (!target && std::holds_alternative<ExprRhs>(r)) {
      fail_at(pos, "expression statement has no effect; expected a statement");
    }
    return make_stmt(pos, AssignStmt{std::move(ann), std::move(decl), std::move(target), std::move(r)});
  }

  void declare_local(const TypeRef& t, const std::string& name, const SourcePos& pos, bool has_init) {
    if (!body_) fail_at(pos, "local declaration outside a method body");
    if (!has_init) body_->locals.push_back(Param{t, name, pos});
  }

  std::vector<ExprPtr> call_args() {
    std::vector<ExprPtr> args;
    expect_symbol("(");
    if (accept_symbol(")")) return args;
    while (true) {
      args.push_back(expression());
      if (accept_symbol(")")) return args;
      expect_symbol(",");
    }
  }

  Rhs rhs() {
    if (accept_word("new")) {
      std::string cls = identifier("class name");
      return NewRhs{std::move(cls), call_args()};
    }
    ExprPtr e = expression();
    if (peek().is_symbol(".") && peek(1).is_word("get")) {
      advance();
      advance();
      return GetRhs{std::move(e)};
    }
    if (accept_symbol("!")) {
      std::string method = callable_name();
      return AsyncCallRhs{std::move(e), std::move(method), call_args()};
    }
    if (accept_symbol(".")) {
      std::string method = callable_name();
      return SyncCallRhs{std::move(e), std::move(method), call_args()};
    }
    return ExprRhs{std::move(e)};
  }

  // --- guards -----------------------------------------------------------------

  GuardPtr guard() {
    bool saved = guard_mode_;
    guard_mode_ = true;
    ExprPtr e = expression();
    guard_mode_ = saved;
    return to_guard(e);
  }

  static bool contains_marker(const ExprPtr& e) {
    if (auto* c = std::get_if<CallExpr>(&e->node)) {
      if (c->function == kFutureMarker) return true;
      return std::any_of(c->args.begin(), c->args.end(), contains_marker);
    }
    if (auto* b = std::get_if<BinaryExpr>(&e->node)) return contains_marker(b->lhs) || contains_marker(b->rhs);
    if (auto* u = std::get_if<UnaryExpr>(&e->node)) return contains_marker(u->operand);
    if (auto* i = std::get_if<IfExpr>(&e->node)) {
      return contains_marker(i->cond) || contains_marker(i->then_branch) || contains_marker(i->else_branch);
    }
    if (auto* k = std::get_if<ConstructorExpr>(&e->node)) {
      return std::any_of(k->args.begin(), k->args.end(), contains_marker);
    }
    if (auto* cs = std::get_if<CaseExpr>(&e->node)) {
      if (contains_marker(cs->scrutinee)) return true;
      return std::any_of(cs->branches.begin(), cs->branches.end(),
                         [](const CaseBranch& b) { return contains_marker(b.body); });
    }
    return false;
  }

  GuardPtr to_guard(const ExprPtr& e) const {
    if (auto* b = std::get_if<BinaryExpr>(&e->node); b && b->op == BinaryOp::And) {
      return std::make_shared<const Guard>(Guard{e->pos, AndGuard{to_guard(b->lhs), to_guard(b->rhs)}});
    }
    if (auto* c = std::get_if<CallExpr>(&e->node)) {
      if (c->function == kFutureMarker) {
        const auto& var = std::get<VarExpr>(c->args.at(0)->node);
        return std::make_shared<const Guard>(Guard{e->pos, FutureGuard{var.name}});
      }
      if (c->function == "duration" && c->args.size() == 2 && !contains_marker(c->args[0]) &&
          !contains_marker(c->args[1])) {
        return std::make_shared<const Guard>(Guard{e->pos, DurationGuard{c->args[0], c->args[1]}});
      }
    }
    if (contains_marker(e)) {
      fail_at(e->pos, "future guards may only be combined with '&&'");
    }
    return std::make_shared<const Guard>(Guard{e->pos, BoolGuard{e}});
  }

  // --- expressions ------------------------------------------------------------

  ExprPtr expression() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (peek().is_symbol("||")) {
      SourcePos pos = advance().pos;
      lhs = make_expr(pos, BinaryExpr{BinaryOp::Or, lhs, and_expr()});
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = comparison();
    while (peek().is_symbol("&&")) {
      SourcePos pos = advance().pos;
      lhs = make_expr(pos, BinaryExpr{BinaryOp::And, lhs, comparison()});
    }
    return lhs;
  }

  ExprPtr comparison() {
    ExprPtr lhs = additive();
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 6> kOps = {{
        {"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"<=", BinaryOp::Le},
        {">=", BinaryOp::Ge}, {"<", BinaryOp::Lt},  {">", BinaryOp::Gt},
    }};
    while (true) {
      bool matched = false;
      for (const auto& [sym, op] : kOps) {
        if (peek().is_symbol(sym)) {
          SourcePos pos = advance().pos;
          lhs = make_expr(pos, BinaryExpr{op, lhs, additive()});
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (peek().is_symbol("+") || peek().is_symbol("-")) {
      const Token& t = advance();
      BinaryOp op = t.text == "+" ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_expr(t.pos, BinaryExpr{op, lhs, multiplicative()});
    }
    return lhs;
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (peek().is_symbol("*") || peek().is_symbol("/") || peek().is_symbol("%")) {
      const Token& t = advance();
      BinaryOp op = t.text == "*" ? BinaryOp::Mul : (t.text == "/" ? BinaryOp::Div : BinaryOp::Mod);
      lhs = make_expr(t.pos, BinaryExpr{op, lhs, unary()});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().is_symbol("!")) {
      SourcePos pos = advance().pos;
      return make_expr(pos, UnaryExpr{UnaryOp::Not, unary()});
    }
    if (peek().is_symbol("-")) {
      SourcePos pos = advance().pos;
      ExprPtr operand = unary();
      // Fold `-literal` so negative numbers round-trip as literals.
      if (auto* lit = std::get_if<LiteralExpr>(&operand->node); lit && lit->value.is_number()) {
        return make_expr(pos, LiteralExpr{Value::number(-lit->value.as_number())});
      }
      return make_expr(pos, UnaryExpr{UnaryOp::Neg, std::move(operand)});
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    SourcePos pos = t.pos;
    switch (t.kind) {
      case TokenKind::Integer:
      case TokenKind::Rational: {
        return make_expr(pos, LiteralExpr{Value::number(number_literal())});
      }
      case TokenKind::String: return make_expr(pos, LiteralExpr{Value::string(advance().text)});
      case TokenKind::Symbol:
        if (t.is_symbol("(")) {
          advance();
          ExprPtr e = expression();
          expect_symbol(")");
          return e;
        }
        break;
      case TokenKind::Identifier: return identifier_expr();
      case TokenKind::End: break;
    }
    fail({"expression"});
  }

  ExprPtr identifier_expr() {
    SourcePos pos = peek().pos;
    std::string word = advance().text;
    if (word == "True" || word == "False") return make_expr(pos, LiteralExpr{Value::boolean(word == "True")});
    if (word == "null") return make_expr(pos, NullExpr{});
    if (word == "this") return make_expr(pos, ThisExpr{});
    if (word == "destiny") return make_expr(pos, DestinyExpr{});
    if (word == "now") {
      if (peek().is_symbol("(") && peek(1).is_symbol(")")) {
        advance();
        advance();
      }
      return make_expr(pos, NowExpr{});
    }
    if (word == "case") return case_expr(pos);
    if (word == "if") {
      ExprPtr cond = expression();
      expect_word("then");
      ExprPtr a = expression();
      expect_word("else");
      ExprPtr b = expression();
      return make_expr(pos, IfExpr{std::move(cond), std::move(a), std::move(b)});
    }
    if (word == "duration") {
      if (!peek().is_symbol("(")) fail({"'('"});
      return make_expr(pos, CallExpr{word, call_args()});
    }
    if (is_keyword(word)) {
      --pos_;
      fail({"expression"});
    }
    if (starts_upper(word)) {
      std::vector<ExprPtr> args;
      if (peek().is_symbol("(")) args = call_args();
      return make_expr(pos, ConstructorExpr{std::move(word), std::move(args)});
    }
    if (peek().is_symbol("(")) return make_expr(pos, CallExpr{std::move(word), call_args()});
    if (word == "deadline") return make_expr(pos, DeadlineExpr{});
    if (guard_mode_ && peek().is_symbol("?")) {
      advance();
      return make_expr(pos, CallExpr{std::string(kFutureMarker), {make_expr(pos, VarExpr{word})}});
    }
    return make_expr(pos, VarExpr{std::move(word)});
  }

  ExprPtr case_expr(SourcePos pos) {
    bool saved = guard_mode_;
    guard_mode_ = false;
    ExprPtr scrutinee = expression();
    expect_symbol("{");
    std::vector<CaseBranch> branches;
    while (!accept_symbol("}")) {
      Pattern p = pattern();
      expect_symbol("=>");
      ExprPtr body = expression();
      branches.push_back(CaseBranch{std::move(p), std::move(body)});
      if (!accept_symbol(";") && !peek().is_symbol("}")) fail({"';'", "'}'"});
    }
    guard_mode_ = saved;
    if (branches.empty()) fail_at(pos, "case expression needs at least one branch");
    return make_expr(pos, CaseExpr{std::move(scrutinee), std::move(branches)});
  }

  // --- patterns ---------------------------------------------------------------

  Pattern pattern() {
    const Token& t = peek();
    SourcePos pos = t.pos;
    if (t.kind == TokenKind::Integer || t.kind == TokenKind::Rational) {
      return Pattern{pos, ValuePattern{Value::number(number_literal())}};
    }
    if (t.is_symbol("-") &&
        (peek(1).kind == TokenKind::Integer || peek(1).kind == TokenKind::Rational)) {
      advance();
      return Pattern{pos, ValuePattern{Value::number(-number_literal())}};
    }
    if (t.kind == TokenKind::String) return Pattern{pos, ValuePattern{Value::string(advance().text)}};
    if (t.kind == TokenKind::Identifier) {
      std::string word = advance().text;
      if (word == "_") return Pattern{pos, WildcardPattern{}};
      if (word == "True" || word == "False") return Pattern{pos, ValuePattern{Value::boolean(word == "True")}};
      if (word == "null") return Pattern{pos, ValuePattern{Value::null()}};
      if (is_keyword(word)) {
        --pos_;
        fail({"pattern"});
      }
      if (starts_upper(word)) {
        ConstructorPattern c{std::move(word), {}};
        if (accept_symbol("(")) {
          if (!accept_symbol(")")) {
            while (true) {
              c.args.push_back(pattern());
              if (accept_symbol(")")) break;
              expect_symbol(",");
            }
          }
        }
        return Pattern{pos, std::move(c)};
      }
      return Pattern{pos, VarPattern{std::move(word)}};
    }
    fail({"pattern"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool guard_mode_ = false;
  Body* body_ = nullptr;
};

}  // namespace

Model parse_model(std::string_view source, const std::string& file_name) {
  return Parser(source, file_name).model();
}

ParseResult try_parse_model(std::string_view source, const std::string& file_name) {
  try {
    return ParseResult{parse_model(source, file_name), {}};
  } catch (const ParseError& e) {
    return ParseResult{std::nullopt, {e.diagnostic()}};
  }
}

ExprPtr parse_expression(std::string_view source, const std::string& file_name) {
  return Parser(source, file_name).single_expression();
}

Pattern parse_pattern(std::string_view source, const std::string& file_name) {
  return Parser(source, file_name).single_pattern();
}

}  // namespace rtabs::syntax

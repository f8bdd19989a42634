#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>

#include "rtabs/errors.hpp"
#include "rtabs/substitution.hpp"
#include "rtabs/syntax/ast.hpp"

namespace rtabs::func {

/// Function definitions by name. A later definition of the same name
/// shadows an earlier one (user models override prelude stubs this way).
class FunctionTable {
 public:
  FunctionTable() = default;
  explicit FunctionTable(const syntax::Model& m) { add(m); }

  void add(const syntax::Model& m);
  void add(const syntax::FunctionDecl& f) { functions_[f.name] = &f; }
  const syntax::FunctionDecl* find(std::string_view name) const;

 private:
  std::unordered_map<std::string, const syntax::FunctionDecl*> functions_;
};

/// Resolution state of a future: null when unresolved.
using FutureLookup = std::function<const Value*(FutureId)>;

inline constexpr std::size_t kDefaultMaxDepth = 100000;

/// Strict evaluator for functional expressions. Function calls see only
/// their formal parameters; calls in tail position reuse the current C++
/// frame but still count towards the recursion depth.
class Evaluator {
 public:
  explicit Evaluator(const FunctionTable& functions, std::size_t max_depth = kDefaultMaxDepth)
      : functions_(&functions), max_depth_(max_depth) {}

  void set_clock(Rational now) { clock_ = std::move(now); }
  const Rational& clock() const { return clock_; }
  void set_futures(FutureLookup lookup) { futures_ = std::move(lookup); }
  const FunctionTable& functions() const { return *functions_; }

  Value eval(const syntax::Expr& e, const Scope& scope);
  Value eval(const syntax::Expr& e, const Substitution& env) { return eval(e, Scope(env)); }

  /// Boolean value of a guard. `x?` consults the future lookup; a duration
  /// guard holds once its lower bound is no longer positive.
  bool eval_guard(const syntax::Guard& g, const Scope& scope);
  bool eval_guard(const syntax::Guard& g, const Substitution& env) { return eval_guard(g, Scope(env)); }

  /// Applies the named function to already evaluated arguments.
  Value call(const std::string& name, std::vector<Value> args);

  bool future_resolved(FutureId f) const { return futures_ && futures_(f) != nullptr; }

 private:
  Value eval_binary(const syntax::BinaryExpr& b, const Scope& scope);

  const FunctionTable* functions_;
  std::size_t max_depth_;
  std::size_t depth_ = 0;
  Rational clock_;
  FutureLookup futures_;
};

/// Matches `v` against `p`, returning the bindings on success.
std::optional<Substitution> match_pattern(const syntax::Pattern& p, const Value& v);

/// Operator semantics shared with runtime code.
Value apply_binary(syntax::BinaryOp op, const Value& a, const Value& b);
Value apply_unary(syntax::UnaryOp op, const Value& v);

}  // namespace rtabs::func

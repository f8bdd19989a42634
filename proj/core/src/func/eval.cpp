#include "rtabs/func/eval.hpp"

#include <deque>

namespace rtabs::func {

using namespace rtabs::syntax;

void FunctionTable::add(const Model& m) {
  for (const auto& f : m.functions) add(f);
}

const FunctionDecl* FunctionTable::find(std::string_view name) const {
  auto it = functions_.find(std::string(name));
  return it == functions_.end() ? nullptr : it->second;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void type_error(const std::string& msg) {
  throw EvalError(EvalError::Kind::TypeError, msg);
}

const Value& lookup(const Scope& scope, const std::string& name) {
  if (const Value* v = scope.find(name)) return *v;
  throw EvalError(EvalError::Kind::UnboundVariable, "unbound variable " + name);
}

bool truth(const Value& v, const char* where) {
  if (!v.is_bool()) type_error(std::string(where) + " must be a Bool, got " + v.str());
  return v.as_bool();
}

const Rational& num(const Value& v, const char* op) {
  if (!v.is_number()) type_error(std::string("operator ") + op + " expects numbers, got " + v.str());
  return v.as_number();
}

struct DepthGuard {
  std::size_t& depth;
  std::size_t entered = 0;
  ~DepthGuard() { depth -= entered; }
};

}  // namespace

Value apply_unary(UnaryOp op, const Value& v) {
  switch (op) {
    case UnaryOp::Not: return Value::boolean(!truth(v, "operand of !"));
    case UnaryOp::Neg: return Value::number(-num(v, "-"));
  }
  type_error("bad unary operator");
}

Value apply_binary(BinaryOp op, const Value& a, const Value& b) {
  switch (op) {
    case BinaryOp::Add: return Value::number(num(a, "+") + num(b, "+"));
    case BinaryOp::Sub:
      if (is_time(a) && is_time(b)) return make_duration(time_value(a) - time_value(b));
      return Value::number(num(a, "-") - num(b, "-"));
    case BinaryOp::Mul: return Value::number(num(a, "*") * num(b, "*"));
    case BinaryOp::Div: {
      const Rational& d = num(b, "/");
      if (d.is_zero()) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
      return Value::number(num(a, "/") / d);
    }
    case BinaryOp::Mod: {
      const Rational& d = num(b, "%");
      if (d.is_zero()) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
      const Rational& n = num(a, "%");
      Rational q(static_cast<std::int64_t>((n / d).to_int64()));
      return Value::number(n - d * q);
    }
    case BinaryOp::Eq: return Value::boolean(a == b);
    case BinaryOp::Ne: return Value::boolean(!(a == b));
    case BinaryOp::Lt: return Value::boolean(compare_values(a, b) < 0);
    case BinaryOp::Le: return Value::boolean(compare_values(a, b) <= 0);
    case BinaryOp::Gt: return Value::boolean(compare_values(a, b) > 0);
    case BinaryOp::Ge: return Value::boolean(compare_values(a, b) >= 0);
    case BinaryOp::And: return Value::boolean(truth(a, "operand of &&") && truth(b, "operand of &&"));
    case BinaryOp::Or: return Value::boolean(truth(a, "operand of ||") || truth(b, "operand of ||"));
  }
  type_error("bad binary operator");
}

std::optional<Substitution> match_pattern(const Pattern& p, const Value& v) {
  Substitution out;
  struct Matcher {
    Substitution& out;
    bool operator()(const Pattern& p, const Value& v) const {
      return std::visit(
          overloaded{
              [](const WildcardPattern&) { return true; },
              [&](const VarPattern& x) {
                out.bind(x.name, v);
                return true;
              },
              [&](const ValuePattern& x) { return x.value == v; },
              [&](const ConstructorPattern& c) {
                if (!v.is_constructor(c.name)) return false;
                auto args = v.constructor_args();
                if (args.size() != c.args.size()) return false;
                for (std::size_t i = 0; i < args.size(); ++i) {
                  if (!(*this)(c.args[i], args[i])) return false;
                }
                return true;
              },
          },
          p.node);
    }
  };
  if (!Matcher{out}(p, v)) return std::nullopt;
  return out;
}

Value Evaluator::eval_binary(const BinaryExpr& b, const Scope& scope) {
  Value lhs = eval(*b.lhs, scope);
  if (b.op == BinaryOp::And && !truth(lhs, "operand of &&")) return lhs;
  if (b.op == BinaryOp::Or && truth(lhs, "operand of ||")) return lhs;
  return apply_binary(b.op, lhs, eval(*b.rhs, scope));
}

Value Evaluator::eval(const Expr& start, const Scope& start_scope) {
  const Expr* e = &start;
  Scope scope = start_scope;
  std::deque<Substitution> frames;
  DepthGuard guard{depth_};

  while (true) {
    if (auto* call = std::get_if<CallExpr>(&e->node)) {
      const FunctionDecl* f = functions_->find(call->function);
      if (!f) throw EvalError(EvalError::Kind::UnknownFunction, "unknown function " + call->function);
      if (f->params.size() != call->args.size()) {
        type_error("function " + f->name + " expects " + std::to_string(f->params.size()) +
                   " arguments, got " + std::to_string(call->args.size()));
      }
      Substitution formals;
      for (std::size_t i = 0; i < f->params.size(); ++i) {
        formals.bind(f->params[i].name, eval(*call->args[i], scope));
      }
      if (depth_ >= max_depth_) {
        throw EvalError(EvalError::Kind::RecursionLimit,
                        "recursion depth limit of " + std::to_string(max_depth_) +
                            " exceeded in " + f->name);
      }
      ++depth_;
      ++guard.entered;
      frames.clear();
      frames.push_back(std::move(formals));
      scope = Scope(frames.back());
      e = f->body.get();
      continue;
    }
    if (auto* c = std::get_if<CaseExpr>(&e->node)) {
      Value v = eval(*c->scrutinee, scope);
      const CaseBranch* chosen = nullptr;
      for (const auto& br : c->branches) {
        if (auto m = match_pattern(br.pattern, v)) {
          frames.push_back(std::move(*m));
          scope = scope.with(frames.back());
          chosen = &br;
          break;
        }
      }
      if (!chosen) throw EvalError(EvalError::Kind::MatchFailure, "no case branch matches " + v.str());
      e = chosen->body.get();
      continue;
    }
    if (auto* i = std::get_if<IfExpr>(&e->node)) {
      e = truth(eval(*i->cond, scope), "if condition") ? i->then_branch.get() : i->else_branch.get();
      continue;
    }
    return std::visit(
        overloaded{
            [](const LiteralExpr& x) { return x.value; },
            [](const NullExpr&) { return Value::null(); },
            [&](const VarExpr& x) { return lookup(scope, x.name); },
            [&](const ThisExpr&) { return lookup(scope, "this"); },
            [&](const DestinyExpr&) { return lookup(scope, "destiny"); },
            [&](const DeadlineExpr&) { return lookup(scope, "deadline"); },
            [&](const NowExpr&) { return make_time(clock_); },
            [&](const UnaryExpr& x) { return apply_unary(x.op, eval(*x.operand, scope)); },
            [&](const BinaryExpr& x) { return eval_binary(x, scope); },
            [&](const ConstructorExpr& x) {
              std::vector<Value> args;
              args.reserve(x.args.size());
              for (const auto& a : x.args) args.push_back(eval(*a, scope));
              return Value::constructor(x.name, std::move(args));
            },
            [](const auto&) -> Value { type_error("unreachable expression form"); },
        },
        e->node);
  }
}

Value Evaluator::call(const std::string& name, std::vector<Value> args) {
  const FunctionDecl* f = functions_->find(name);
  if (!f) throw EvalError(EvalError::Kind::UnknownFunction, "unknown function " + name);
  if (f->params.size() != args.size()) {
    type_error("function " + name + " expects " + std::to_string(f->params.size()) +
               " arguments, got " + std::to_string(args.size()));
  }
  Substitution formals;
  for (std::size_t i = 0; i < args.size(); ++i) formals.bind(f->params[i].name, std::move(args[i]));
  if (depth_ >= max_depth_) {
    throw EvalError(EvalError::Kind::RecursionLimit,
                    "recursion depth limit of " + std::to_string(max_depth_) + " exceeded in " + name);
  }
  DepthGuard guard{depth_, 1};
  ++depth_;
  return eval(*f->body, Scope(formals));
}

bool Evaluator::eval_guard(const Guard& g, const Scope& scope) {
  return std::visit(
      overloaded{
          [&](const BoolGuard& x) { return truth(eval(*x.expr, scope), "await condition"); },
          [&](const FutureGuard& x) {
            const Value& f = lookup(scope, x.var);
            if (!f.is_future()) type_error(x.var + " is not a future: " + f.str());
            return future_resolved(f.as_future());
          },
          [&](const DurationGuard& x) {
            TimeBound b = as_time_amount(eval(*x.best, scope));
            return b.is_finite() && b.value().sign() <= 0;
          },
          [&](const AndGuard& x) { return eval_guard(*x.lhs, scope) && eval_guard(*x.rhs, scope); },
      },
      g.node);
}

}  // namespace rtabs::func

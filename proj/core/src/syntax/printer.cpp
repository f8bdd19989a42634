#include "rtabs/syntax/printer.hpp"

#include <sstream>

namespace rtabs::syntax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join_exprs(const std::vector<ExprPtr>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += print_expr(*args[i]);
  }
  return out;
}

bool needs_parens(const Expr& e) {
  return std::holds_alternative<BinaryExpr>(e.node) || std::holds_alternative<UnaryExpr>(e.node) ||
         std::holds_alternative<IfExpr>(e.node) || std::holds_alternative<CaseExpr>(e.node) ||
         (std::holds_alternative<LiteralExpr>(e.node) &&
          std::get<LiteralExpr>(e.node).value.is_number() &&
          std::get<LiteralExpr>(e.node).value.as_number().sign() < 0);
}

std::string operand(const ExprPtr& e) {
  std::string s = print_expr(*e);
  return needs_parens(*e) ? "(" + s + ")" : s;
}

std::string params(const std::vector<Param>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += ps[i].type.str() + " " + ps[i].name;
  }
  return out;
}

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

std::string rhs_str(const Rhs& r) {
  return std::visit(
      overloaded{
          [](const ExprRhs& x) { return print_expr(*x.expr); },
          [](const NewRhs& x) { return "new " + x.class_name + "(" + join_exprs(x.args) + ")"; },
          [](const GetRhs& x) { return operand(x.future) + ".get"; },
          [](const AsyncCallRhs& x) {
            return operand(x.callee) + "!" + x.method + "(" + join_exprs(x.args) + ")";
          },
          [](const SyncCallRhs& x) {
            return operand(x.callee) + "." + x.method + "(" + join_exprs(x.args) + ")";
          },
      },
      r);
}

void print_block(std::ostringstream& os, const Block& b, int indent) {
  for (const auto& s : b) os << print_stmt(*s, indent) << "\n";
}

void print_body(std::ostringstream& os, const Body& b, int indent) {
  for (const auto& l : b.locals) os << pad(indent) << l.type.str() << " " << l.name << ";\n";
  print_block(os, b.stmts, indent);
}

}  // namespace

std::string print_expr(const Expr& e) {
  return std::visit(
      overloaded{
          [](const LiteralExpr& x) { return x.value.str(); },
          [](const NullExpr&) { return std::string("null"); },
          [](const VarExpr& x) { return x.name; },
          [](const ThisExpr&) { return std::string("this"); },
          [](const DestinyExpr&) { return std::string("destiny"); },
          [](const DeadlineExpr&) { return std::string("deadline"); },
          [](const NowExpr&) { return std::string("now"); },
          [](const UnaryExpr& x) { return std::string(to_string(x.op)) + operand(x.operand); },
          [](const BinaryExpr& x) {
            return operand(x.lhs) + " " + to_string(x.op) + " " + operand(x.rhs);
          },
          [](const ConstructorExpr& x) {
            return x.args.empty() ? x.name : x.name + "(" + join_exprs(x.args) + ")";
          },
          [](const CallExpr& x) { return x.function + "(" + join_exprs(x.args) + ")"; },
          [](const CaseExpr& x) {
            std::string out = "case " + operand(x.scrutinee) + " { ";
            for (const auto& b : x.branches) {
              out += print_pattern(b.pattern) + " => " + print_expr(*b.body) + "; ";
            }
            return out + "}";
          },
          [](const IfExpr& x) {
            return "if " + print_expr(*x.cond) + " then " + operand(x.then_branch) + " else " +
                   operand(x.else_branch);
          },
      },
      e.node);
}

std::string print_pattern(const Pattern& p) {
  return std::visit(overloaded{
                        [](const WildcardPattern&) { return std::string("_"); },
                        [](const VarPattern& x) { return x.name; },
                        [](const ValuePattern& x) { return x.value.str(); },
                        [](const ConstructorPattern& x) {
                          if (x.args.empty()) return x.name;
                          std::string out = x.name + "(";
                          for (std::size_t i = 0; i < x.args.size(); ++i) {
                            if (i) out += ", ";
                            out += print_pattern(x.args[i]);
                          }
                          return out + ")";
                        },
                    },
                    p.node);
}

std::string print_guard(const Guard& g) {
  return std::visit(
      overloaded{
          [](const BoolGuard& x) { return operand(x.expr); },
          [](const FutureGuard& x) { return x.var + "?"; },
          [](const DurationGuard& x) {
            return "duration(" + print_expr(*x.best) + ", " + print_expr(*x.worst) + ")";
          },
          [](const AndGuard& x) {
            std::string rhs = print_guard(*x.rhs);
            if (std::holds_alternative<AndGuard>(x.rhs->node)) rhs = "(" + rhs + ")";
            return print_guard(*x.lhs) + " && " + rhs;
          },
      },
      g.node);
}

std::string print_annotations(const AnnotationSet& a) {
  if (a.empty()) return "";
  std::string out = "[";
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (i) out += ", ";
    out += std::string(to_string(a.items[i].kind)) + ": " + print_expr(*a.items[i].value);
  }
  return out + "] ";
}

std::string print_stmt(const Stmt& s, int indent) {
  std::ostringstream os;
  os << pad(indent);
  std::visit(
      overloaded{
          [&](const SkipStmt&) { os << "skip;"; },
          [&](const SuspendStmt&) { os << "suspend;"; },
          [&](const ReturnStmt& x) { os << "return " << print_expr(*x.value) << ";"; },
          [&](const IfStmt& x) {
            os << "if " << operand(x.cond) << " {\n";
            print_block(os, x.then_block, indent + 1);
            os << pad(indent) << "}";
            if (x.else_block) {
              os << " else {\n";
              print_block(os, *x.else_block, indent + 1);
              os << pad(indent) << "}";
            }
          },
          [&](const WhileStmt& x) {
            os << "while " << operand(x.cond) << " {\n";
            print_block(os, x.body, indent + 1);
            os << pad(indent) << "}";
          },
          [&](const AwaitStmt& x) { os << "await " << print_guard(*x.guard) << ";"; },
          [&](const DurationStmt& x) {
            os << "duration(" << print_expr(*x.best) << ", " << print_expr(*x.worst) << ");";
          },
          [&](const AssignStmt& x) {
            os << print_annotations(x.annotations);
            if (x.declared_type) os << x.declared_type->str() << " ";
            if (x.target) os << *x.target << " = ";
            os << rhs_str(x.rhs) << ";";
          },
          [&](const AwaitCallStmt& x) {
            os << print_annotations(x.annotations) << "await ";
            if (x.declared_type) os << x.declared_type->str() << " ";
            os << *x.target << " = " << operand(x.callee) << "." << x.method << "("
               << join_exprs(x.args) << ");";
          },
      },
      s.node);
  return os.str();
}

std::string print_model(const Model& m) {
  std::ostringstream os;
  for (const auto& d : m.datatypes) {
    os << "data " << d.name;
    if (!d.type_params.empty()) {
      os << "<";
      for (std::size_t i = 0; i < d.type_params.size(); ++i) os << (i ? ", " : "") << d.type_params[i];
      os << ">";
    }
    if (!d.constructors.empty()) {
      os << " = ";
      for (std::size_t i = 0; i < d.constructors.size(); ++i) {
        const auto& c = d.constructors[i];
        os << (i ? " | " : "") << c.name;
        if (!c.args.empty()) {
          os << "(";
          for (std::size_t j = 0; j < c.args.size(); ++j) {
            os << (j ? ", " : "") << c.args[j].type.str();
            if (c.args[j].name) os << " " << *c.args[j].name;
          }
          os << ")";
        }
      }
    }
    os << ";\n";
  }
  for (const auto& f : m.functions) {
    os << "def " << f.return_type.str() << " " << f.name;
    if (!f.type_params.empty()) {
      os << "<";
      for (std::size_t i = 0; i < f.type_params.size(); ++i) os << (i ? ", " : "") << f.type_params[i];
      os << ">";
    }
    os << "(" << params(f.params) << ") = " << print_expr(*f.body) << ";\n";
  }
  for (const auto& i : m.interfaces) {
    os << "interface " << i.name << " {\n";
    for (const auto& sig : i.methods) {
      os << "  " << sig.return_type.str() << " " << sig.name << "(" << params(sig.params) << ");\n";
    }
    os << "}\n";
  }
  for (const auto& c : m.classes) {
    os << print_annotations(c.annotations) << "class " << c.name;
    if (!c.params.empty()) os << "(" << params(c.params) << ")";
    if (!c.interfaces.empty()) {
      os << " implements ";
      for (std::size_t i = 0; i < c.interfaces.size(); ++i) os << (i ? ", " : "") << c.interfaces[i];
    }
    os << " {\n";
    for (const auto& f : c.fields) {
      os << "  " << f.type.str() << " " << f.name;
      if (f.init) os << " = " << print_expr(*f.init);
      os << ";\n";
    }
    for (const auto& meth : c.methods) {
      os << "  " << print_annotations(meth.annotations) << meth.sig.return_type.str() << " "
         << meth.sig.name << "(" << params(meth.sig.params) << ") {\n";
      print_body(os, meth.body, 2);
      os << "  }\n";
    }
    os << "}\n";
  }
  if (m.main) {
    os << "{\n";
    print_body(os, *m.main, 1);
    os << "}\n";
  }
  return os.str();
}

}  // namespace rtabs::syntax

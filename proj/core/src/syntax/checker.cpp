#include "rtabs/syntax/checker.hpp"

#include <map>
#include <set>

namespace rtabs::syntax {

namespace {

struct Signature {
  std::size_t arity;
  SourcePos pos;
};

struct VarInfo {
  std::optional<TypeRef> type;
};

/// Where an expression sits; controls which implicit names are visible.
struct ExprContext {
  std::map<std::string, VarInfo> vars;
  const ClassDecl* cls = nullptr;
  bool in_method = false;
  bool allow_this = false;
  std::set<std::string> type_vars;
};

class Checker {
 public:
  explicit Checker(const Model& m) : model_(m) {}

  Diagnostics run() {
    collect();
    for (const auto& d : model_.datatypes) check_datatype(d);
    for (const auto& f : model_.functions) check_function(f);
    for (const auto& i : model_.interfaces) {
      for (const auto& sig : i.methods) check_signature_types(sig, {});
    }
    for (const auto& c : model_.classes) check_class(c);
    if (model_.main) check_main(*model_.main);
    return std::move(diags_);
  }

 private:
  void error(const SourcePos& pos, std::string msg) {
    diags_.push_back(Diagnostic{pos, Severity::Error, std::move(msg)});
  }

  // --- declarations ------------------------------------------------------------

  void collect() {
    for (const auto& d : model_.datatypes) {
      if (datatypes_.count(d.name)) error(d.pos, "duplicate datatype " + d.name);
      datatypes_[d.name] = d.type_params.size();
      for (const auto& c : d.constructors) {
        if (constructors_.count(c.name)) {
          error(c.pos, "duplicate constructor " + c.name);
          continue;
        }
        constructors_[c.name] = Signature{c.args.size(), c.pos};
      }
    }
    // Later function definitions shadow earlier ones.
    for (const auto& f : model_.functions) functions_[f.name] = Signature{f.params.size(), f.pos};
    for (const auto& i : model_.interfaces) {
      if (interfaces_.count(i.name)) error(i.pos, "duplicate interface " + i.name);
      interfaces_[i.name] = &i;
    }
    for (const auto& c : model_.classes) {
      if (classes_.count(c.name)) error(c.pos, "duplicate class " + c.name);
      classes_[c.name] = &c;
    }
  }

  void check_type(const TypeRef& t, const SourcePos& pos, const std::set<std::string>& type_vars) {
    std::size_t expected = 0;
    if (type_vars.count(t.name)) {
      expected = 0;
    } else if (t.name == "Int" || t.name == "Rat" || t.name == "Bool" || t.name == "String") {
      expected = 0;
    } else if (t.name == "Fut") {
      expected = 1;
    } else if (auto it = datatypes_.find(t.name); it != datatypes_.end()) {
      expected = it->second;
    } else if (interfaces_.count(t.name) || classes_.count(t.name)) {
      expected = 0;
    } else {
      error(pos, "unknown type " + t.name);
      return;
    }
    if (t.args.size() != expected) {
      error(pos, "type " + t.name + " expects " + std::to_string(expected) + " type arguments, got " +
                     std::to_string(t.args.size()));
    }
    for (const auto& a : t.args) check_type(a, pos, type_vars);
  }

  void check_datatype(const DataDecl& d) {
    std::set<std::string> tv(d.type_params.begin(), d.type_params.end());
    for (const auto& c : d.constructors) {
      for (const auto& a : c.args) check_type(a.type, c.pos, tv);
    }
  }

  void check_signature_types(const MethodSig& sig, const std::set<std::string>& tv) {
    check_type(sig.return_type, sig.pos, tv);
    std::set<std::string> seen;
    for (const auto& p : sig.params) {
      check_type(p.type, p.pos, tv);
      if (!seen.insert(p.name).second) error(p.pos, "duplicate parameter " + p.name);
    }
  }

  void check_function(const FunctionDecl& f) {
    ExprContext ctx;
    ctx.type_vars.insert(f.type_params.begin(), f.type_params.end());
    check_type(f.return_type, f.pos, ctx.type_vars);
    for (const auto& p : f.params) {
      check_type(p.type, p.pos, ctx.type_vars);
      if (ctx.vars.count(p.name)) error(p.pos, "duplicate parameter " + p.name);
      ctx.vars[p.name] = VarInfo{p.type};
    }
    check_expr(*f.body, ctx);
  }

  void declare_reserved_checked(const Param& p, std::map<std::string, VarInfo>& vars,
                                const char* what) {
    if (is_reserved_name(p.name)) {
      error(p.pos, "reserved name " + p.name + " cannot be declared as a " + what);
    }
    vars[p.name] = VarInfo{p.type};
  }

  std::map<std::string, VarInfo> attributes(const ClassDecl& c) const {
    std::map<std::string, VarInfo> out;
    for (const auto& p : c.params) out[p.name] = VarInfo{p.type};
    for (const auto& f : c.fields) out[f.name] = VarInfo{f.type};
    return out;
  }

  void check_class(const ClassDecl& c) {
    std::map<std::string, VarInfo> attrs;
    for (const auto& p : c.params) {
      check_type(p.type, p.pos, {});
      if (attrs.count(p.name)) error(p.pos, "duplicate class parameter " + p.name);
      declare_reserved_checked(p, attrs, "class parameter");
    }
    for (const auto& f : c.fields) {
      check_type(f.type, f.pos, {});
      if (attrs.count(f.name)) error(f.pos, "duplicate field " + f.name);
      if (f.init) {
        ExprContext ctx;
        ctx.vars = attrs;
        ctx.cls = &c;
        ctx.allow_this = true;
        check_expr(*f.init, ctx);
      }
      declare_reserved_checked(Param{f.type, f.name, f.pos}, attrs, "field");
    }

    for (const auto& a : c.annotations.items) {
      if (a.kind != AnnotationKind::Scheduler) {
        error(a.pos, std::string(to_string(a.kind)) + " annotation is not allowed on a class");
        continue;
      }
      check_scheduler_expr(*a.value, c);
    }

    for (const auto& iname : c.interfaces) {
      auto it = interfaces_.find(iname);
      if (it == interfaces_.end()) {
        error(c.pos, "unknown interface " + iname);
        continue;
      }
      for (const auto& sig : it->second->methods) {
        const MethodDecl* m = c.find_method(sig.name);
        if (!m) {
          error(c.pos, "class " + c.name + " does not implement method " + sig.name +
                           " of interface " + iname);
        } else if (m->sig.params.size() != sig.params.size()) {
          error(m->sig.pos, "method " + sig.name + " of class " + c.name + " takes " +
                                std::to_string(m->sig.params.size()) + " parameters but interface " +
                                iname + " declares " + std::to_string(sig.params.size()));
        }
      }
    }

    std::set<std::string> method_names;
    for (const auto& m : c.methods) {
      if (!method_names.insert(m.sig.name).second) {
        error(m.sig.pos, "duplicate method " + m.sig.name + " in class " + c.name);
      }
      check_method(c, attrs, m);
    }
  }

  void check_scheduler_expr(const Expr& e, const ClassDecl& c) {
    ExprContext ctx;
    ctx.vars = attributes(c);
    ctx.vars["queue"] = VarInfo{TypeRef{"List", {TypeRef{"Process", {}}}}};
    ctx.cls = &c;
    ctx.allow_this = true;
    check_expr(e, ctx);
  }

  /// Names declared by `T x = ...;` statements anywhere in a block.
  static void collect_declared(const Block& b, std::vector<Param>& out) {
    for (const auto& s : b) {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, AssignStmt> || std::is_same_v<T, AwaitCallStmt>) {
              if (node.declared_type && node.target) {
                out.push_back(Param{*node.declared_type, *node.target, s->pos});
              }
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              collect_declared(node.then_block, out);
              if (node.else_block) collect_declared(*node.else_block, out);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
              collect_declared(node.body, out);
            }
          },
          s->node);
    }
  }

  void declare_body_locals(const Body& body, ExprContext& ctx,
                           const std::map<std::string, VarInfo>& shadowable) {
    std::vector<Param> locals = body.locals;
    collect_declared(body.stmts, locals);
    std::set<std::string> seen;
    for (const auto& l : locals) {
      check_type(l.type, l.pos, {});
      if (is_reserved_name(l.name)) {
        error(l.pos, "reserved name " + l.name + " cannot be declared as a local variable");
      } else if (!seen.insert(l.name).second) {
        error(l.pos, "duplicate local variable " + l.name);
      } else if (ctx.vars.count(l.name) && !shadowable.count(l.name)) {
        error(l.pos, "local variable " + l.name + " shadows a parameter");
      }
      ctx.vars[l.name] = VarInfo{l.type};
    }
  }

  void check_method(const ClassDecl& c, const std::map<std::string, VarInfo>& attrs,
                    const MethodDecl& m) {
    check_type(m.sig.return_type, m.sig.pos, {});

    ExprContext formals;
    for (const auto& p : m.sig.params) {
      check_type(p.type, p.pos, {});
      if (formals.vars.count(p.name)) error(p.pos, "duplicate parameter " + p.name);
      declare_reserved_checked(p, formals.vars, "parameter");
    }

    for (const auto& a : m.annotations.items) {
      if (a.kind != AnnotationKind::Cost) {
        error(a.pos, std::string(to_string(a.kind)) + " annotation is not allowed on a method");
        continue;
      }
      check_expr(*a.value, formals);
    }

    ExprContext ctx;
    ctx.vars = attrs;
    ctx.cls = &c;
    ctx.in_method = true;
    ctx.allow_this = true;
    for (const char* r : kReservedNames) {
      if (std::string_view(r) != "queue") ctx.vars[r] = VarInfo{};
    }
    for (const auto& [name, info] : formals.vars) ctx.vars[name] = info;
    declare_body_locals(m.body, ctx, attrs);
    check_block(m.body.stmts, ctx);
  }

  void check_main(const Body& body) {
    ExprContext ctx;
    declare_body_locals(body, ctx, {});
    check_block(body.stmts, ctx);
  }

  // --- statements ----------------------------------------------------------------

  void check_block(const Block& b, const ExprContext& ctx) {
    for (const auto& s : b) check_stmt(*s, ctx);
  }

  void check_target(const std::string& x, const SourcePos& pos, const ExprContext& ctx) {
    if (is_reserved_name(x) && x != "value") {
      error(pos, "cannot assign to reserved name " + x);
    } else if (!ctx.vars.count(x)) {
      error(pos, "unknown variable " + x);
    }
  }

  void check_call_annotations(const AnnotationSet& ann, const ExprContext& ctx) {
    for (const auto& a : ann.items) {
      if (a.kind != AnnotationKind::Deadline && a.kind != AnnotationKind::Critical) {
        error(a.pos, std::string(to_string(a.kind)) + " annotation is not allowed on a call");
        continue;
      }
      check_expr(*a.value, ctx);
    }
  }

  void check_stmt(const Stmt& s, const ExprContext& ctx) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ReturnStmt>) {
            check_expr(*node.value, ctx);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            check_expr(*node.cond, ctx);
            check_block(node.then_block, ctx);
            if (node.else_block) check_block(*node.else_block, ctx);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            check_expr(*node.cond, ctx);
            check_block(node.body, ctx);
          } else if constexpr (std::is_same_v<T, AwaitStmt>) {
            check_guard(*node.guard, ctx);
          } else if constexpr (std::is_same_v<T, DurationStmt>) {
            check_expr(*node.best, ctx);
            check_expr(*node.worst, ctx);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            check_assign(s, node, ctx);
          } else if constexpr (std::is_same_v<T, AwaitCallStmt>) {
            if (node.target && !(node.declared_type && is_reserved_name(*node.target))) {
              check_target(*node.target, s.pos, ctx);
            }
            check_call_annotations(node.annotations, ctx);
            check_method_call(*node.callee, node.method, node.args, s.pos, ctx);
          }
        },
        s.node);
  }

  void check_assign(const Stmt& s, const AssignStmt& a, const ExprContext& ctx) {
    // A reserved declaration is already reported by the local scan.
    if (a.target && !(a.declared_type && is_reserved_name(*a.target))) check_target(*a.target, s.pos, ctx);
    std::visit(
        [&](const auto& rhs) {
          using T = std::decay_t<decltype(rhs)>;
          if constexpr (std::is_same_v<T, ExprRhs> || std::is_same_v<T, GetRhs>) {
            for (const auto& an : a.annotations.items) {
              error(an.pos, std::string(to_string(an.kind)) +
                                " annotation is only allowed on calls and object creation");
            }
            if constexpr (std::is_same_v<T, ExprRhs>) {
              check_expr(*rhs.expr, ctx);
            } else {
              check_expr(*rhs.future, ctx);
            }
          } else if constexpr (std::is_same_v<T, NewRhs>) {
            auto it = classes_.find(rhs.class_name);
            if (it == classes_.end()) {
              error(s.pos, "unknown class " + rhs.class_name);
            } else if (it->second->params.size() != rhs.args.size()) {
              error(s.pos, "class " + rhs.class_name + " expects " +
                               std::to_string(it->second->params.size()) + " arguments, got " +
                               std::to_string(rhs.args.size()));
            }
            for (const auto& e : rhs.args) check_expr(*e, ctx);
            for (const auto& an : a.annotations.items) {
              if (an.kind != AnnotationKind::Scheduler) {
                error(an.pos, std::string(to_string(an.kind)) +
                                  " annotation is not allowed on object creation");
              } else if (it != classes_.end()) {
                check_scheduler_expr(*an.value, *it->second);
              }
            }
          } else {
            check_call_annotations(a.annotations, ctx);
            check_method_call(*rhs.callee, rhs.method, rhs.args, s.pos, ctx);
          }
        },
        a.rhs);
  }

  std::optional<std::string> static_type(const Expr& callee, const ExprContext& ctx) const {
    if (std::holds_alternative<ThisExpr>(callee.node) && ctx.cls) return ctx.cls->name;
    if (auto* v = std::get_if<VarExpr>(&callee.node)) {
      auto it = ctx.vars.find(v->name);
      if (it != ctx.vars.end() && it->second.type) return it->second.type->name;
    }
    return std::nullopt;
  }

  void check_method_call(const Expr& callee, const std::string& method,
                         const std::vector<ExprPtr>& args, const SourcePos& pos,
                         const ExprContext& ctx) {
    check_expr(callee, ctx);
    for (const auto& e : args) check_expr(*e, ctx);

    std::vector<std::size_t> arities;
    auto add_iface = [&](const InterfaceDecl& i) {
      for (const auto& sig : i.methods) {
        if (sig.name == method) arities.push_back(sig.params.size());
      }
    };
    auto add_class = [&](const ClassDecl& c) {
      if (const MethodDecl* m = c.find_method(method)) arities.push_back(m->sig.params.size());
    };

    auto type = static_type(callee, ctx);
    std::string owner;
    if (type && interfaces_.count(*type)) {
      add_iface(*interfaces_.at(*type));
      owner = " of interface " + *type;
    } else if (type && classes_.count(*type)) {
      add_class(*classes_.at(*type));
      owner = " of class " + *type;
    } else {
      for (const auto& [_, i] : interfaces_) add_iface(*i);
      for (const auto& [_, c] : classes_) add_class(*c);
    }
    if (arities.empty()) {
      error(pos, "unknown method " + method + owner);
      return;
    }
    for (std::size_t a : arities) {
      if (a == args.size()) return;
    }
    error(pos, "method " + method + owner + " expects " + std::to_string(arities.front()) +
                   " arguments, got " + std::to_string(args.size()));
  }

  void check_guard(const Guard& g, const ExprContext& ctx) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, BoolGuard>) {
            check_expr(*node.expr, ctx);
          } else if constexpr (std::is_same_v<T, FutureGuard>) {
            if (!ctx.vars.count(node.var)) error(g.pos, "unknown variable " + node.var);
          } else if constexpr (std::is_same_v<T, DurationGuard>) {
            check_expr(*node.best, ctx);
            check_expr(*node.worst, ctx);
          } else {
            check_guard(*node.lhs, ctx);
            check_guard(*node.rhs, ctx);
          }
        },
        g.node);
  }

  // --- expressions ---------------------------------------------------------------

  void check_arity(const char* what, const std::string& name, std::size_t expected,
                   std::size_t got, const SourcePos& pos) {
    if (expected != got) {
      error(pos, std::string(what) + " " + name + " expects " + std::to_string(expected) +
                     " arguments, got " + std::to_string(got));
    }
  }

  void check_pattern(const Pattern& p, std::map<std::string, VarInfo>& bound) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, VarPattern>) {
            bound[node.name] = VarInfo{};
          } else if constexpr (std::is_same_v<T, ConstructorPattern>) {
            auto it = constructors_.find(node.name);
            if (it == constructors_.end()) {
              error(p.pos, "unknown constructor " + node.name);
            } else {
              check_arity("constructor", node.name, it->second.arity, node.args.size(), p.pos);
            }
            for (const auto& a : node.args) check_pattern(a, bound);
          }
        },
        p.node);
  }

  void check_expr(const Expr& e, const ExprContext& ctx) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, VarExpr>) {
            if (!ctx.vars.count(node.name)) error(e.pos, "unknown variable " + node.name);
          } else if constexpr (std::is_same_v<T, ThisExpr>) {
            if (!ctx.allow_this) error(e.pos, "this may only appear inside a class");
          } else if constexpr (std::is_same_v<T, DestinyExpr>) {
            if (!ctx.in_method) error(e.pos, "destiny may only appear inside method bodies");
          } else if constexpr (std::is_same_v<T, DeadlineExpr>) {
            if (!ctx.in_method) error(e.pos, "deadline may only appear inside method bodies");
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            check_expr(*node.operand, ctx);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            check_expr(*node.lhs, ctx);
            check_expr(*node.rhs, ctx);
          } else if constexpr (std::is_same_v<T, ConstructorExpr>) {
            auto it = constructors_.find(node.name);
            if (it == constructors_.end()) {
              error(e.pos, "unknown constructor " + node.name);
            } else {
              check_arity("constructor", node.name, it->second.arity, node.args.size(), e.pos);
            }
            for (const auto& a : node.args) check_expr(*a, ctx);
          } else if constexpr (std::is_same_v<T, CallExpr>) {
            auto it = functions_.find(node.function);
            if (it == functions_.end()) {
              error(e.pos, "unknown function " + node.function);
            } else {
              check_arity("function", node.function, it->second.arity, node.args.size(), e.pos);
            }
            for (const auto& a : node.args) check_expr(*a, ctx);
          } else if constexpr (std::is_same_v<T, CaseExpr>) {
            check_expr(*node.scrutinee, ctx);
            if (node.branches.empty()) error(e.pos, "case expression needs at least one branch");
            for (const auto& b : node.branches) {
              ExprContext inner = ctx;
              check_pattern(b.pattern, inner.vars);
              check_expr(*b.body, inner);
            }
          } else if constexpr (std::is_same_v<T, IfExpr>) {
            check_expr(*node.cond, ctx);
            check_expr(*node.then_branch, ctx);
            check_expr(*node.else_branch, ctx);
          }
        },
        e.node);
  }

  const Model& model_;
  Diagnostics diags_;
  std::map<std::string, std::size_t> datatypes_;
  std::map<std::string, Signature> constructors_;
  std::map<std::string, Signature> functions_;
  std::map<std::string, const InterfaceDecl*> interfaces_;
  std::map<std::string, const ClassDecl*> classes_;
};

}  // namespace

Diagnostics check_model(const Model& m) { return Checker(m).run(); }

}  // namespace rtabs::syntax

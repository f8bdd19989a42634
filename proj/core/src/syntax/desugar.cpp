#include "rtabs/syntax/desugar.hpp"

#include <map>
#include <set>

namespace rtabs::syntax {

namespace {

ExprPtr default_scheduler(const SourcePos& pos) {
  return make_expr(pos, CallExpr{"default", {make_expr(pos, VarExpr{"queue"})}});
}

class Desugarer {
 public:
  explicit Desugarer(const Model& m) : model_(m) {}

  Model run() {
    Model out = model_;
    for (auto& c : out.classes) {
      if (!c.annotations.has(AnnotationKind::Scheduler)) {
        c.annotations.set(Annotation{c.pos, AnnotationKind::Scheduler, default_scheduler(c.pos)});
      }
    }
    for (auto& c : out.classes) {
      for (auto& m : c.methods) {
        if (!m.annotations.has(AnnotationKind::Cost)) {
          const SourcePos& pos = m.sig.pos;
          m.annotations.set(Annotation{
              pos, AnnotationKind::Cost,
              make_expr(pos, ConstructorExpr{"Duration", {make_expr(pos, LiteralExpr{Value::number(0)})}})});
        }
        BodyScope scope;
        scope.cls = &c;
        for (const auto& p : c.params) scope.types[p.name] = p.type;
        for (const auto& f : c.fields) scope.types[f.name] = f.type;
        for (const auto& p : m.sig.params) scope.types[p.name] = p.type;
        rewrite_body(m.body, scope, out);
      }
    }
    if (out.main) {
      BodyScope scope;
      rewrite_body(*out.main, scope, out);
    }
    return out;
  }

 private:
  struct BodyScope {
    const ClassDecl* cls = nullptr;
    std::map<std::string, TypeRef> types;
    int next_fresh = 1;
  };

  static void collect_declared(const Block& b, std::map<std::string, TypeRef>& out) {
    for (const auto& s : b) {
      if (auto* a = std::get_if<AssignStmt>(&s->node); a && a->declared_type && a->target) {
        out[*a->target] = *a->declared_type;
      } else if (auto* w = std::get_if<AwaitCallStmt>(&s->node); w && w->declared_type && w->target) {
        out[*w->target] = *w->declared_type;
      } else if (auto* i = std::get_if<IfStmt>(&s->node)) {
        collect_declared(i->then_block, out);
        if (i->else_block) collect_declared(*i->else_block, out);
      } else if (auto* l = std::get_if<WhileStmt>(&s->node)) {
        collect_declared(l->body, out);
      }
    }
  }

  void rewrite_body(Body& body, BodyScope& scope, const Model& out) {
    for (const auto& l : body.locals) scope.types[l.name] = l.type;
    collect_declared(body.stmts, scope.types);
    body.stmts = rewrite_block(body.stmts, scope, out);
  }

  std::string fresh_name(BodyScope& scope) {
    while (true) {
      std::string name = "__fut" + std::to_string(scope.next_fresh++);
      if (!scope.types.count(name)) {
        scope.types[name] = TypeRef{"Fut", {}};
        return name;
      }
    }
  }

  TypeRef return_type(const Expr& callee, const std::string& method, const BodyScope& scope,
                      const Model& out) const {
    std::optional<std::string> type;
    if (std::holds_alternative<ThisExpr>(callee.node) && scope.cls) type = scope.cls->name;
    if (auto* v = std::get_if<VarExpr>(&callee.node)) {
      auto it = scope.types.find(v->name);
      if (it != scope.types.end()) type = it->second.name;
    }
    auto from_iface = [&](const InterfaceDecl& i) -> std::optional<TypeRef> {
      for (const auto& sig : i.methods) {
        if (sig.name == method) return sig.return_type;
      }
      return std::nullopt;
    };
    auto from_class = [&](const ClassDecl& c) -> std::optional<TypeRef> {
      if (const MethodDecl* m = c.find_method(method)) return m->sig.return_type;
      return std::nullopt;
    };
    if (type) {
      for (const auto& i : out.interfaces) {
        if (i.name == *type) {
          if (auto t = from_iface(i)) return *t;
        }
      }
      for (const auto& c : out.classes) {
        if (c.name == *type) {
          if (auto t = from_class(c)) return *t;
        }
      }
    }
    for (const auto& i : out.interfaces) {
      if (auto t = from_iface(i)) return *t;
    }
    for (const auto& c : out.classes) {
      if (auto t = from_class(c)) return *t;
    }
    return TypeRef{"Unit", {}};
  }

  static AnnotationSet call_defaults(AnnotationSet ann, const SourcePos& pos) {
    if (!ann.has(AnnotationKind::Deadline)) {
      ann.set(Annotation{pos, AnnotationKind::Deadline, make_expr(pos, ConstructorExpr{"InfDuration", {}})});
    }
    if (!ann.has(AnnotationKind::Critical)) {
      ann.set(Annotation{pos, AnnotationKind::Critical, make_expr(pos, LiteralExpr{Value::boolean(false)})});
    }
    return ann;
  }

  /// `Fut<T> f = callee!method(args)` followed by the statements that read it.
  void expand_call(const SourcePos& pos, const AnnotationSet& ann, const ExprPtr& callee,
                   const std::string& method, const std::vector<ExprPtr>& args, bool await,
                   const std::optional<TypeRef>& declared, const std::optional<std::string>& target,
                   BodyScope& scope, const Model& out, Block& dst) {
    std::string f = fresh_name(scope);
    TypeRef fut{"Fut", {return_type(*callee, method, scope, out)}};
    scope.types[f] = fut;
    dst.push_back(make_stmt(pos, AssignStmt{call_defaults(ann, pos), fut, f,
                                            AsyncCallRhs{callee, method, args}}));
    if (await) {
      dst.push_back(make_stmt(pos, AwaitStmt{std::make_shared<const Guard>(Guard{pos, FutureGuard{f}})}));
    }
    dst.push_back(make_stmt(pos, AssignStmt{{}, declared, target, GetRhs{make_expr(pos, VarExpr{f})}}));
  }

  Block rewrite_block(const Block& in, BodyScope& scope, const Model& out) {
    Block dst;
    for (const auto& s : in) {
      const SourcePos& pos = s->pos;
      if (auto* a = std::get_if<AssignStmt>(&s->node)) {
        if (auto* sync = std::get_if<SyncCallRhs>(&a->rhs)) {
          expand_call(pos, a->annotations, sync->callee, sync->method, sync->args, false,
                      a->declared_type, a->target, scope, out, dst);
        } else if (std::holds_alternative<AsyncCallRhs>(a->rhs)) {
          AssignStmt copy = *a;
          copy.annotations = call_defaults(copy.annotations, pos);
          dst.push_back(make_stmt(pos, std::move(copy)));
        } else if (auto* n = std::get_if<NewRhs>(&a->rhs); n && !a->annotations.has(AnnotationKind::Scheduler)) {
          AssignStmt copy = *a;
          ExprPtr policy = default_scheduler(pos);
          for (const auto& c : out.classes) {
            if (c.name == n->class_name) {
              if (const Annotation* sched = c.annotations.find(AnnotationKind::Scheduler)) {
                policy = sched->value;
              }
            }
          }
          copy.annotations.set(Annotation{pos, AnnotationKind::Scheduler, policy});
          dst.push_back(make_stmt(pos, std::move(copy)));
        } else {
          dst.push_back(s);
        }
      } else if (auto* w = std::get_if<AwaitCallStmt>(&s->node)) {
        expand_call(pos, w->annotations, w->callee, w->method, w->args, true, w->declared_type,
                    w->target, scope, out, dst);
      } else if (auto* i = std::get_if<IfStmt>(&s->node)) {
        IfStmt copy{i->cond, rewrite_block(i->then_block, scope, out), std::nullopt};
        if (i->else_block) copy.else_block = rewrite_block(*i->else_block, scope, out);
        dst.push_back(make_stmt(pos, std::move(copy)));
      } else if (auto* l = std::get_if<WhileStmt>(&s->node)) {
        dst.push_back(make_stmt(pos, WhileStmt{l->cond, rewrite_block(l->body, scope, out)}));
      } else {
        dst.push_back(s);
      }
    }
    return dst;
  }

  const Model& model_;
};

}  // namespace

Model desugar(const Model& m) { return Desugarer(m).run(); }

}  // namespace rtabs::syntax

#include "rtabs/engine/runtime.hpp"

#include <algorithm>
#include <sstream>

#include "rtabs/sched/policy.hpp"
#include "rtabs/syntax/printer.hpp"

namespace rtabs::engine {

using namespace rtabs::syntax;
using metrics::EventKind;
using metrics::TraceEvent;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string obj_name(ObjectId id) { return "ob#" + std::to_string(id); }
std::string fut_name(FutureId id) { return "fut#" + std::to_string(id); }

TimeBound minus(const TimeBound& b, const Rational& d) {
  return b.is_infinite() ? b : TimeBound::finite(b.value() - d);
}

std::string one_line(std::string s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == '\n' || c == ' ') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string duration_text(const Value& v) { return duration_bound(v).str(); }

// Reserved locals in Proc constructor order.
constexpr const char* kProcFields[] = {"destiny", "method", "arrival", "cost", "deadline",
                                       "start",   "finish", "critical", "value"};

void push_block(std::vector<RtStmt>& stack, const Block& b) {
  for (auto it = b.rbegin(); it != b.rend(); ++it) stack.emplace_back(SrcStmt{*it});
}

}  // namespace

RtGuardPtr make_guard(RtGuard g) { return std::make_shared<const RtGuard>(std::move(g)); }

// ---------------------------------------------------------------------------
// Configuration

ObjectState* Configuration::find_object(ObjectId id) {
  if (id == 0 || id > objects.size()) return nullptr;
  return &objects[id - 1];
}

const ObjectState* Configuration::find_object(ObjectId id) const {
  if (id == 0 || id > objects.size()) return nullptr;
  return &objects[id - 1];
}

const Value* Configuration::future_value(FutureId f) const {
  auto it = futures.find(f);
  if (it == futures.end() || !it->second) return nullptr;
  return &*it->second;
}

std::string render_guard(const RtGuard& g) {
  return std::visit(
      Overloaded{
          [](const RtGuard::Bool& b) { return print_expr(*b.expr); },
          [](const RtGuard::Future& f) { return f.var + "?"; },
          [](const RtGuard::Duration& d) {
            return "duration(" + d.best.str() + ", " + d.worst.str() + ")";
          },
          [](const RtGuard::And& a) {
            return "(" + render_guard(*a.lhs) + " & " + render_guard(*a.rhs) + ")";
          },
      },
      g.node);
}

std::string render_stmt(const RtStmt& s) {
  return std::visit(
      Overloaded{
          [](const SrcStmt& x) { return one_line(print_stmt(*x.stmt)); },
          [](const AssignValue& x) { return (x.target ? *x.target : std::string("_")) + " := " + x.value.str(); },
          [](const Duration2& x) {
            return "duration2(" + x.best.str() + ", " + x.worst.str() + ")";
          },
          [](const RtAwait& x) { return "await " + render_guard(*x.guard); },
          [](const RtSuspend&) { return std::string("suspend"); },
      },
      s);
}

std::string render_process(const ProcessRecord& p) {
  std::string out = fut_name(p.pid) + " " + p.method + (p.dispatched ? "*" : "") + " {";
  bool first = true;
  for (const auto& [k, v] : p.locals) {
    if (!first) out += ", ";
    first = false;
    out += k + "=" + v.str();
  }
  out += "} [";
  for (auto it = p.stack.rbegin(); it != p.stack.rend(); ++it) {
    if (it != p.stack.rbegin()) out += "; ";
    out += render_stmt(*it);
  }
  return out + "]";
}

std::string render_configuration(const Configuration& cfg, bool canonical) {
  std::ostringstream os;
  os << "clock " << cfg.clock << "\n";
  for (const auto& o : cfg.objects) {
    os << obj_name(o.id) << " " << o.class_name << " {";
    std::vector<std::string> attrs;
    for (const auto& [k, v] : o.attrs) attrs.push_back(k + "=" + v.str());
    if (canonical) std::sort(attrs.begin(), attrs.end());
    for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
    os << "}\n  active: " << (o.active ? render_process(*o.active) : std::string("idle")) << "\n";
    for (const auto& p : o.queue) os << "  queued: " << render_process(p) << "\n";
  }
  std::vector<std::string> msgs;
  for (const auto& m : cfg.messages) {
    std::string s = m.method + "(" + obj_name(m.callee) + ", [";
    for (std::size_t i = 0; i < m.args.size(); ++i) s += (i ? ", " : "") + m.args[i].str();
    s += "], " + fut_name(m.future) + ", " + m.deadline.str() + ", " + (m.critical ? "True" : "False") +
         ", " + m.timestamp.str() + ")";
    msgs.push_back(std::move(s));
  }
  if (canonical) std::sort(msgs.begin(), msgs.end());
  for (const auto& s : msgs) os << "msg " << s << "\n";
  for (const auto& [f, v] : cfg.futures) {
    os << fut_name(f) << " = " << (v ? v->str() : std::string("?")) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Sampling

const char* to_string(DurationPolicy p) {
  switch (p) {
    case DurationPolicy::Worst: return "worst";
    case DurationPolicy::Best: return "best";
    case DurationPolicy::Uniform: return "uniform";
  }
  return "?";
}

std::optional<DurationPolicy> parse_duration_policy(std::string_view text) {
  if (text == "worst") return DurationPolicy::Worst;
  if (text == "best") return DurationPolicy::Best;
  if (text == "uniform") return DurationPolicy::Uniform;
  return std::nullopt;
}

TimeBound Sampler::sample(const TimeBound& b, const TimeBound& w) {
  TimeBound lo = min(b, w);
  TimeBound hi = max(b, w);
  switch (policy_) {
    case DurationPolicy::Worst: return hi;
    case DurationPolicy::Best: return lo;
    case DurationPolicy::Uniform: break;
  }
  // Infinite upper bound: nothing sensible to draw from.
  if (hi.is_infinite() || lo == hi) return lo;
  auto k = static_cast<std::int64_t>(rng_() % 1001);
  return TimeBound::finite(lo.value() + (hi.value() - lo.value()) * Rational(k, 1000));
}

// ---------------------------------------------------------------------------
// Semantics

Semantics::Semantics(std::shared_ptr<const Program> program, Configuration& cfg,
                     EngineOptions options, metrics::Trace* trace)
    : program_(std::move(program)),
      cfg_(&cfg),
      options_(options),
      ev_(program_->functions(), options.max_depth),
      sampler_(options.duration_policy, options.seed),
      trace_(trace) {
  ev_.set_clock(cfg.clock);
  ev_.set_futures([c = cfg_](FutureId f) { return c->future_value(f); });
}

void Semantics::emit(TraceEvent e) {
  if (trace_) trace_->push_back(std::move(e));
}

void Semantics::fail(const ObjectState* o, const ProcessRecord* p, const std::string& what) {
  std::string msg;
  if (o) msg += obj_name(o->id) + " (" + o->class_name + ")";
  if (p) {
    msg += ", " + fut_name(p->pid) + " " + p->method;
    if (const RtStmt* h = p->head()) {
      if (auto* s = std::get_if<SrcStmt>(h)) {
        msg += " at " + s->stmt->pos.file_name() + ":" + std::to_string(s->stmt->pos.line) + ":" +
               std::to_string(s->stmt->pos.column);
      }
      msg += " `" + render_stmt(*h) + "`";
    }
  }
  if (!msg.empty()) msg += ": ";
  msg += what;
  TraceEvent e{cfg_->clock, EventKind::Error, {}, {}, p ? p->method : "", {{"message", msg}}};
  if (o) e.object = o->id;
  if (p) e.pid = p->pid;
  emit(std::move(e));
  throw RuntimeError(msg);
}

FutureId Semantics::fresh_future() {
  FutureId f = cfg_->next_future++;
  cfg_->futures.emplace(f, std::nullopt);
  return f;
}

void Semantics::bootstrap() {
  ObjectState main;
  main.id = cfg_->next_object++;
  main.class_name = "<main>";
  main.policy = program_->default_policy();
  main.attrs.bind("this", Value::object(main.id));

  ProcessRecord p;
  p.pid = fresh_future();
  p.method = "<main>";
  p.dispatched = true;
  p.locals.bind("destiny", Value::future(p.pid));
  p.locals.bind("method", Value::string(p.method));
  p.locals.bind("arrival", make_time(cfg_->clock));
  p.locals.bind("cost", make_duration(Rational(0)));
  p.locals.bind("deadline", make_inf_duration());
  p.locals.bind("start", make_time(cfg_->clock));
  p.locals.bind("finish", make_time(0));
  p.locals.bind("critical", Value::boolean(false));
  p.locals.bind("value", Value::number(0));
  if (const auto& body = program_->model().main) {
    for (const auto& name : program_->locals_of(*body)) p.locals.bind(name, Value::null());
    push_block(p.stack, body->stmts);
  }
  cfg_->objects.push_back(std::move(main));
  ObjectState& o = cfg_->objects.back();
  o.active = std::move(p);
  try {
    normalize(o, *o.active);
  } catch (const std::exception& ex) {
    fail(&o, &*o.active, ex.what());
  }
}

ProcessRecord Semantics::bind_activation(const InvocationMessage& msg) {
  const ObjectState* callee = cfg_->find_object(msg.callee);
  if (!callee) throw RuntimeError("message to unknown object " + obj_name(msg.callee));
  const MethodDecl* m = callee->cls ? callee->cls->find_method(msg.method) : nullptr;
  if (!m) {
    throw RuntimeError("unknown method " + msg.method + " of " + obj_name(msg.callee) + " (" +
                       callee->class_name + ")");
  }
  if (m->sig.params.size() != msg.args.size()) {
    throw RuntimeError("method " + msg.method + " expects " + std::to_string(m->sig.params.size()) +
                       " arguments, got " + std::to_string(msg.args.size()));
  }
  Substitution formals;
  for (std::size_t i = 0; i < msg.args.size(); ++i) formals.bind(m->sig.params[i].name, msg.args[i]);

  Value cost = make_duration(Rational(0));
  if (const Annotation* a = m->annotations.find(AnnotationKind::Cost)) {
    cost = make_duration(as_time_amount(ev_.eval(*a->value, formals)));
  }

  ProcessRecord p;
  p.pid = msg.future;
  p.method = msg.method;
  p.locals.bind("destiny", Value::future(msg.future));
  p.locals.bind("method", Value::string(msg.method));
  p.locals.bind("arrival", make_time(msg.timestamp));
  p.locals.bind("cost", cost);
  p.locals.bind("deadline", msg.deadline);
  p.locals.bind("start", make_time(0));
  p.locals.bind("finish", make_time(0));
  p.locals.bind("critical", Value::boolean(msg.critical));
  p.locals.bind("value", Value::number(0));
  for (const auto& [k, v] : formals) p.locals.bind(k, v);
  for (const auto& name : program_->locals_of(m->body)) {
    if (!p.locals.contains(name)) p.locals.bind(name, Value::null());
  }
  push_block(p.stack, m->body.stmts);
  return p;
}

Value Semantics::lift(const ProcessRecord& p) {
  std::vector<Value> args;
  args.reserve(9);
  for (const char* f : kProcFields) args.push_back(p.locals.at(f));
  return Value::constructor("Proc", std::move(args));
}

Value Semantics::liftall(const std::vector<ProcessRecord>& q) {
  std::vector<Value> items;
  items.reserve(q.size());
  for (const auto& p : q) items.push_back(lift(p));
  return make_list(items);
}

std::optional<ProcessRecord> Semantics::select(FutureId pid, const std::vector<ProcessRecord>& q) {
  for (const auto& p : q) {
    if (p.pid == pid) return p;
  }
  return std::nullopt;
}

bool Semantics::guard_holds(const RtGuard& g, const Scope& scope) {
  return std::visit(
      Overloaded{
          [&](const RtGuard::Bool& b) { return ev_.eval(*b.expr, scope).as_bool(); },
          [&](const RtGuard::Future& f) {
            const Value* v = scope.find(f.var);
            if (!v) throw EvalError(EvalError::Kind::UnboundVariable, "unbound variable " + f.var);
            if (!v->is_future()) {
              throw EvalError(EvalError::Kind::TypeError, f.var + " is not a future: " + v->str());
            }
            return cfg_->future_value(v->as_future()) != nullptr;
          },
          [&](const RtGuard::Duration& d) { return d.best.is_finite() && d.best.value().sign() <= 0; },
          [&](const RtGuard::And& a) { return guard_holds(*a.lhs, scope) && guard_holds(*a.rhs, scope); },
      },
      g.node);
}

namespace {

// Future read by a `x = e.get` head, if that is the head.
const GetRhs* get_head(const ProcessRecord& p) {
  const RtStmt* h = p.head();
  if (!h) return nullptr;
  auto* s = std::get_if<SrcStmt>(h);
  if (!s) return nullptr;
  auto* a = std::get_if<AssignStmt>(&s->stmt->node);
  if (!a) return nullptr;
  return std::get_if<GetRhs>(&a->rhs);
}

}  // namespace

bool Semantics::ready(const ObjectState& o, const ProcessRecord& p) {
  const RtStmt* h = p.head();
  if (!h) return true;
  if (auto* a = std::get_if<RtAwait>(h)) return guard_holds(*a->guard, scope_of(o, p));
  if (auto* d = std::get_if<Duration2>(h)) return d->best.is_finite() && d->best.value().sign() <= 0;
  if (auto* s = std::get_if<SrcStmt>(h); s && std::holds_alternative<AwaitStmt>(s->stmt->node)) {
    return false;
  }
  if (const GetRhs* g = get_head(p)) {
    Value f = ev_.eval(*g->future, scope_of(o, p));
    return cfg_->future_value(f.as_future()) != nullptr;
  }
  return true;
}

std::vector<std::size_t> Semantics::ready_set(const ObjectState& o) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < o.queue.size(); ++i) {
    if (ready(o, o.queue[i])) out.push_back(i);
  }
  return out;
}

bool Semantics::enabled(const ObjectState& o, const ProcessRecord& p) {
  const RtStmt* h = p.head();
  if (!h) return true;
  if (auto* d = std::get_if<Duration2>(h)) return d->best.is_finite() && d->best.value().sign() <= 0;
  if (const GetRhs* g = get_head(p)) {
    Value f = ev_.eval(*g->future, scope_of(o, p));
    return cfg_->future_value(f.as_future()) != nullptr;
  }
  return true;
}

TimeBound Semantics::mte(const RtGuard& g, const Scope& scope) {
  if (auto* d = std::get_if<RtGuard::Duration>(&g.node)) return d->worst;
  if (auto* a = std::get_if<RtGuard::And>(&g.node)) return max(mte(*a->lhs, scope), mte(*a->rhs, scope));
  return guard_holds(g, scope) ? TimeBound::finite(0) : TimeBound::infinite();
}

TimeBound Semantics::mte(const ObjectState& o, const ProcessRecord& p) {
  const RtStmt* h = p.head();
  if (h) {
    if (auto* d = std::get_if<Duration2>(h)) return d->worst;
    if (auto* a = std::get_if<RtAwait>(h)) return mte(*a->guard, scope_of(o, p));
  }
  return enabled(o, p) ? TimeBound::finite(0) : TimeBound::infinite();
}

TimeBound Semantics::mte(const ObjectState& o) {
  if (o.active) return mte(o, *o.active);
  TimeBound m = TimeBound::infinite();
  for (const auto& p : o.queue) m = min(m, mte(o, p));
  return m;
}

TimeBound Semantics::mte() {
  TimeBound m = cfg_->messages.empty() ? TimeBound::infinite() : TimeBound::finite(0);
  for (const auto& o : cfg_->objects) m = min(m, mte(o));
  return m;
}

RtGuardPtr Semantics::adv(const RtGuardPtr& g, const Rational& delta) {
  if (auto* d = std::get_if<RtGuard::Duration>(&g->node)) {
    return make_guard(RtGuard{RtGuard::Duration{minus(d->best, delta), minus(d->worst, delta)}});
  }
  if (auto* a = std::get_if<RtGuard::And>(&g->node)) {
    return make_guard(RtGuard{RtGuard::And{adv(a->lhs, delta), adv(a->rhs, delta)}});
  }
  return g;
}

void Semantics::adv(ProcessRecord& p, const Rational& delta) {
  if (Value* d = p.locals.find("deadline"); d && is_duration(*d)) {
    TimeBound b = duration_bound(*d);
    if (b.is_finite()) *d = make_duration(b.value() - delta);
  }
  if (p.stack.empty()) return;
  RtStmt& h = p.stack.back();
  if (auto* d = std::get_if<Duration2>(&h)) {
    d->best = minus(d->best, delta);
    d->worst = minus(d->worst, delta);
  } else if (auto* a = std::get_if<RtAwait>(&h)) {
    a->guard = adv(a->guard, delta);
  }
}

void Semantics::adv(const Rational& delta) {
  for (auto& o : cfg_->objects) {
    if (o.active) adv(*o.active, delta);
    for (auto& p : o.queue) adv(p, delta);
  }
  cfg_->clock += delta;
  ev_.set_clock(cfg_->clock);
}

void Semantics::tick(const Rational& delta) {
  adv(delta);
  emit(TraceEvent{cfg_->clock, EventKind::Tick, {}, {}, "", {{"delta", delta.str()}}});
}

RtGuardPtr Semantics::materialize(const Guard& g, const Scope& scope) {
  return std::visit(
      Overloaded{
          [&](const BoolGuard& b) { return make_guard(RtGuard{RtGuard::Bool{b.expr}}); },
          [&](const FutureGuard& f) { return make_guard(RtGuard{RtGuard::Future{f.var}}); },
          [&](const DurationGuard& d) {
            TimeBound delta = sampler_.sample(as_time_amount(ev_.eval(*d.best, scope)),
                                              as_time_amount(ev_.eval(*d.worst, scope)));
            return make_guard(RtGuard{RtGuard::Duration{delta, delta}});
          },
          [&](const AndGuard& a) {
            auto l = materialize(*a.lhs, scope);
            auto r = materialize(*a.rhs, scope);
            return make_guard(RtGuard{RtGuard::And{l, r}});
          },
      },
      g.node);
}

void Semantics::normalize(const ObjectState& o, ProcessRecord& p) {
  if (p.stack.empty()) return;
  auto* s = std::get_if<SrcStmt>(&p.stack.back());
  if (!s) return;
  if (auto* a = std::get_if<AwaitStmt>(&s->stmt->node)) {
    RtGuardPtr g = materialize(*a->guard, scope_of(o, p));
    p.stack.back() = RtAwait{std::move(g)};
  }
}

void Semantics::send(ObjectId caller, std::optional<FutureId> caller_pid, InvocationMessage msg) {
  TraceEvent e{cfg_->clock, EventKind::Invoke, caller, msg.future, msg.method,
               {{"callee", obj_name(msg.callee)},
                {"deadline", duration_text(msg.deadline)},
                {"critical", msg.critical ? "True" : "False"}}};
  if (caller_pid) e.data.emplace_back("caller", fut_name(*caller_pid));
  emit(std::move(e));
  cfg_->messages.push_back(std::move(msg));
}

ObjectId Semantics::create_object(const ClassDecl& cls, std::vector<Value> args, ExprPtr policy) {
  if (args.size() != cls.params.size()) {
    throw RuntimeError("class " + cls.name + " expects " + std::to_string(cls.params.size()) +
                       " arguments, got " + std::to_string(args.size()));
  }
  ObjectState o;
  o.id = cfg_->next_object++;
  o.class_name = cls.name;
  o.cls = &cls;
  o.policy = policy ? std::move(policy) : program_->default_policy();
  o.attrs.bind("this", Value::object(o.id));
  for (std::size_t i = 0; i < args.size(); ++i) o.attrs.bind(cls.params[i].name, args[i]);
  for (const auto& f : cls.fields) {
    o.attrs.bind(f.name, f.init ? ev_.eval(*f.init, o.attrs) : Value::null());
  }
  ObjectId id = o.id;
  cfg_->objects.push_back(std::move(o));
  emit(TraceEvent{cfg_->clock, EventKind::NewObject, id, {}, "", {{"class", cls.name}}});
  if (cls.find_method("run")) {
    InvocationMessage run{"run", id, {}, fresh_future(), make_inf_duration(), false, cfg_->clock};
    send(id, std::nullopt, std::move(run));
  }
  return id;
}

void Semantics::resolve(FutureId f, const Value& v) {
  auto& cell = cfg_->futures[f];
  if (cell) throw RuntimeError(fut_name(f) + " resolved twice");
  cell = v;
}

void Semantics::assign(ObjectState& o, ProcessRecord& p, const std::string& name, Value v) {
  if (Value* slot = p.locals.find(name)) {
    *slot = std::move(v);
  } else {
    o.attrs.bind(name, std::move(v));
  }
}

void Semantics::finish_process(ObjectState& o, ProcessRecord& p, const Value& result) {
  if (!o.cls) {
    resolve(p.pid, result);
    o.active.reset();
    return;
  }
  p.locals.bind("finish", make_time(cfg_->clock));
  resolve(p.pid, result);
  const Value& remaining = p.locals.at("deadline");
  TimeBound rem = duration_bound(remaining);
  emit(TraceEvent{cfg_->clock, EventKind::Return, o.id, p.pid, p.method,
                  {{"deadline", rem.str()}, {"finish", cfg_->clock.str()}, {"value", result.str()}}});
  emit(TraceEvent{cfg_->clock, EventKind::Resolve, o.id, p.pid, p.method, {{"value", result.str()}}});
  if (rem.is_finite() && rem.value().sign() < 0) {
    emit(TraceEvent{cfg_->clock, EventKind::DeadlineMiss, o.id, p.pid, p.method,
                    {{"lateness", (-rem.value()).str()}}});
  }
  o.active.reset();
}

void Semantics::activate(std::size_t message_index) {
  InvocationMessage msg = std::move(cfg_->messages.at(message_index));
  cfg_->messages.erase(cfg_->messages.begin() + static_cast<std::ptrdiff_t>(message_index));
  ObjectState* callee = cfg_->find_object(msg.callee);
  if (!callee) fail(nullptr, nullptr, "message to unknown object " + obj_name(msg.callee));
  ProcessRecord p;
  try {
    p = bind_activation(msg);
    normalize(*callee, p);
  } catch (const std::exception& ex) {
    fail(callee, nullptr, ex.what());
  }
  std::string label;
  for (const auto& a : msg.args) {
    if (a.is_string()) {
      label = a.as_string();
      break;
    }
  }
  emit(TraceEvent{cfg_->clock, EventKind::Activate, msg.callee, msg.future, msg.method,
                  {{"arrival", msg.timestamp.str()},
                   {"cost", duration_text(p.locals.at("cost"))},
                   {"deadline", duration_text(msg.deadline)},
                   {"critical", msg.critical ? "True" : "False"},
                   {"label", label}}});
  callee->queue.push_back(std::move(p));
}

bool Semantics::schedule(ObjectState& o) {
  if (o.active || o.queue.empty()) return false;
  try {
    auto idx = ready_set(o);
    if (idx.empty()) return false;
    std::vector<Value> lifted;
    lifted.reserve(idx.size());
    for (auto i : idx) lifted.push_back(lift(o.queue[i]));
    FutureId pid = sched::evaluate_policy(ev_, *o.policy, lifted, o.attrs);
    auto it = std::find_if(o.queue.begin(), o.queue.end(), [&](const auto& p) { return p.pid == pid; });
    ProcessRecord p = std::move(*it);
    o.queue.erase(it);
    if (!p.dispatched) {
      p.dispatched = true;
      p.locals.bind("start", make_time(cfg_->clock));
    }
    emit(TraceEvent{cfg_->clock, EventKind::Schedule, o.id, p.pid, p.method,
                    {{"deadline", duration_text(p.locals.at("deadline"))},
                     {"start", time_value(p.locals.at("start")).str()}}});
    o.active = std::move(p);
  } catch (const RuntimeError&) {
    throw;
  } catch (const std::exception& ex) {
    fail(&o, nullptr, ex.what());
  }
  return true;
}

bool Semantics::step_active(ObjectState& o) {
  if (!o.active) return false;
  ProcessRecord& p = *o.active;
  try {
    if (p.stack.empty()) {
      finish_process(o, p, make_unit());
      return true;
    }
    RtStmt& h = p.stack.back();
    if (auto* s = std::get_if<SrcStmt>(&h)) {
      StmtPtr keep = s->stmt;
      if (auto* a = std::get_if<AssignStmt>(&keep->node); a && std::holds_alternative<GetRhs>(a->rhs)) {
        if (!enabled(o, p)) return false;
      }
      exec_src(o, p, *keep);
    } else if (auto* a = std::get_if<AssignValue>(&h)) {
      AssignValue av = std::move(*a);
      p.stack.pop_back();
      if (av.target) assign(o, p, *av.target, std::move(av.value));
    } else if (auto* d = std::get_if<Duration2>(&h)) {
      if (!(d->best.is_finite() && d->best.value().sign() <= 0)) return false;
      p.stack.pop_back();
    } else if (auto* w = std::get_if<RtAwait>(&h)) {
      if (guard_holds(*w->guard, scope_of(o, p))) {
        p.stack.pop_back();
      } else {
        p.stack.emplace_back(RtSuspend{});
      }
    } else {
      p.stack.pop_back();
      emit(TraceEvent{cfg_->clock, EventKind::Suspend, o.id, p.pid, p.method, {}});
      o.queue.push_back(std::move(p));
      o.active.reset();
      return true;
    }
    if (o.active) normalize(o, *o.active);
  } catch (const RuntimeError&) {
    throw;
  } catch (const std::exception& ex) {
    fail(&o, o.active ? &*o.active : nullptr, ex.what());
  }
  return true;
}

void Semantics::exec_src(ObjectState& o, ProcessRecord& p, const Stmt& s) {
  auto pop = [&] { p.stack.pop_back(); };
  std::visit(
      Overloaded{
          [&](const SkipStmt&) { pop(); },
          [&](const SuspendStmt&) {
            pop();
            normalize(o, p);
            emit(TraceEvent{cfg_->clock, EventKind::Suspend, o.id, p.pid, p.method, {}});
            o.queue.push_back(std::move(p));
            o.active.reset();
          },
          [&](const ReturnStmt& r) {
            Value v = ev_.eval(*r.value, scope_of(o, p));
            finish_process(o, p, v);
          },
          [&](const IfStmt& i) {
            bool c = ev_.eval(*i.cond, scope_of(o, p)).as_bool();
            pop();
            if (c) {
              push_block(p.stack, i.then_block);
            } else if (i.else_block) {
              push_block(p.stack, *i.else_block);
            }
          },
          [&](const WhileStmt& w) {
            if (ev_.eval(*w.cond, scope_of(o, p)).as_bool()) {
              push_block(p.stack, w.body);
            } else {
              pop();
            }
          },
          [&](const AwaitStmt& a) { p.stack.back() = RtAwait{materialize(*a.guard, scope_of(o, p))}; },
          [&](const DurationStmt& d) {
            Scope sc = scope_of(o, p);
            TimeBound delta = sampler_.sample(as_time_amount(ev_.eval(*d.best, sc)),
                                              as_time_amount(ev_.eval(*d.worst, sc)));
            p.stack.back() = Duration2{delta, delta};
          },
          [&](const AssignStmt& a) {
            Scope sc = scope_of(o, p);
            std::visit(
                Overloaded{
                    [&](const ExprRhs& r) {
                      Value v = ev_.eval(*r.expr, sc);
                      pop();
                      if (a.target) assign(o, p, *a.target, std::move(v));
                    },
                    [&](const NewRhs& r) {
                      const ClassDecl* cls = program_->find_class(r.class_name);
                      if (!cls) throw RuntimeError("unknown class " + r.class_name);
                      std::vector<Value> args;
                      for (const auto& e : r.args) args.push_back(ev_.eval(*e, sc));
                      ExprPtr policy;
                      if (const Annotation* an = a.annotations.find(AnnotationKind::Scheduler)) {
                        policy = an->value;
                      } else if (const Annotation* cn = cls->annotations.find(AnnotationKind::Scheduler)) {
                        policy = cn->value;
                      }
                      ObjectId id = create_object(*cls, std::move(args), std::move(policy));
                      if (a.target) {
                        p.stack.back() = AssignValue{a.target, Value::object(id)};
                      } else {
                        pop();
                      }
                    },
                    [&](const GetRhs& r) {
                      Value f = ev_.eval(*r.future, sc);
                      const Value* v = cfg_->future_value(f.as_future());
                      if (!v) throw RuntimeError("read of unresolved future " + f.str());
                      p.stack.back() = AssignValue{a.target, *v};
                    },
                    [&](const AsyncCallRhs& r) {
                      Value callee = ev_.eval(*r.callee, sc);
                      if (!callee.is_object()) {
                        throw EvalError(EvalError::Kind::TypeError,
                                        "asynchronous call on " + callee.str());
                      }
                      std::vector<Value> args;
                      for (const auto& e : r.args) args.push_back(ev_.eval(*e, sc));
                      Value deadline = make_inf_duration();
                      if (const Annotation* an = a.annotations.find(AnnotationKind::Deadline)) {
                        deadline = make_duration(as_time_amount(ev_.eval(*an->value, sc)));
                      }
                      bool critical = false;
                      if (const Annotation* an = a.annotations.find(AnnotationKind::Critical)) {
                        critical = ev_.eval(*an->value, sc).as_bool();
                      }
                      FutureId f = fresh_future();
                      send(o.id, p.pid,
                           InvocationMessage{r.method, callee.as_object(), std::move(args), f,
                                             std::move(deadline), critical, cfg_->clock});
                      if (a.target) {
                        p.stack.back() = AssignValue{a.target, Value::future(f)};
                      } else {
                        pop();
                      }
                    },
                    [&](const SyncCallRhs&) { throw RuntimeError("synchronous call was not desugared"); },
                },
                a.rhs);
          },
          [&](const AwaitCallStmt&) { throw RuntimeError("await call was not desugared"); },
      },
      s.node);
}

}  // namespace rtabs::engine

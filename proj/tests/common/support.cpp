#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rtabs/syntax/parser.hpp"

namespace rtabs::testing {

using namespace rtabs::engine;

std::string fixture_path(std::string_view name) {
  return std::string(RTABS_FIXTURES_DIR) + "/" + std::string(name);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const Program> load_ok(std::string_view source, const std::string& name) {
  auto loaded = load_program(source, name);
  if (!loaded.ok()) {
    std::string msg = "model does not load:";
    for (const auto& d : loaded.diagnostics) msg += "\n" + d.str();
    throw std::runtime_error(msg);
  }
  return loaded.program;
}

std::shared_ptr<const Program> load_fixture(std::string_view name) {
  std::string path = fixture_path(name);
  return load_ok(read_text(path), path);
}

RunOutput run_model(const std::shared_ptr<const Program>& program, const Rational& limit,
                    EngineOptions options) {
  RunOutput out;
  Engine eng(program, options);
  run_with_large_stack([&] { out.result = eng.run_until(limit); });
  out.trace = eng.take_trace();
  return out;
}

std::string trace_csv(const metrics::Trace& trace) {
  return metrics::format_trace(trace, metrics::TraceFormat::Csv);
}

Value proc(FutureId pid, const std::string& method, const Rational& arrival, const TimeBound& cost,
           const TimeBound& deadline, bool crit, const Rational& value) {
  return Value::constructor(
      "Proc", {Value::future(pid), Value::string(method), make_time(arrival), make_duration(cost),
               make_duration(deadline), make_time(0), make_time(0), Value::boolean(crit),
               Value::number(value)});
}

ProcessRecord process(FutureId pid, Value deadline, std::vector<RtStmt> stack) {
  ProcessRecord p;
  p.pid = pid;
  p.method = "m";
  p.locals.bind("destiny", Value::future(pid));
  p.locals.bind("method", Value::string("m"));
  p.locals.bind("arrival", make_time(0));
  p.locals.bind("cost", make_duration(Rational(0)));
  p.locals.bind("deadline", std::move(deadline));
  p.locals.bind("start", make_time(0));
  p.locals.bind("finish", make_time(0));
  p.locals.bind("critical", Value::boolean(false));
  p.locals.bind("value", Value::number(0));
  p.stack = std::move(stack);
  return p;
}

namespace {

TimeBound fin(std::int64_t n) { return TimeBound::finite(n); }

RtStmt dur2(std::int64_t b, std::int64_t w) { return Duration2{fin(b), fin(w)}; }

RtGuardPtr gdur(std::int64_t b, std::int64_t w) {
  return make_guard(RtGuard{RtGuard::Duration{fin(b), fin(w)}});
}
RtGuardPtr gbool(const char* src) {
  return make_guard(RtGuard{RtGuard::Bool{syntax::parse_expression(src)}});
}
RtGuardPtr gand(RtGuardPtr a, RtGuardPtr b) {
  return make_guard(RtGuard{RtGuard::And{std::move(a), std::move(b)}});
}

RtStmt skip_stmt() { return SrcStmt{syntax::make_stmt(syntax::SourcePos{}, syntax::SkipStmt{})}; }

RtStmt get_stmt(const char* var) {
  return SrcStmt{syntax::make_stmt(
      syntax::SourcePos{},
      syntax::AssignStmt{{}, std::nullopt, std::string("x"), syntax::GetRhs{syntax::parse_expression(var)}})};
}

// A configuration harness: one Semantics over a program with no classes.
struct World {
  std::shared_ptr<const Program> program = load_ok("{ }");
  Configuration cfg;
  Semantics sem{program, cfg};

  ObjectState& object(Substitution attrs = {}) {
    ObjectState o;
    o.id = cfg.next_object++;
    o.class_name = "T";
    o.policy = program->default_policy();
    o.attrs = std::move(attrs);
    o.attrs.bind("this", Value::object(o.id));
    cfg.objects.push_back(std::move(o));
    return cfg.objects.back();
  }
  FutureId future() {
    FutureId f = cfg.next_future++;
    cfg.futures.emplace(f, std::nullopt);
    return f;
  }
};

std::string expect(const TimeBound& got, const TimeBound& want) {
  return got == want ? "" : "expected " + want.str() + ", got " + got.str();
}

std::string expect_text(const std::string& got, const std::string& want) {
  return got == want ? "" : "expected `" + want + "`, got `" + got + "`";
}

}  // namespace

std::vector<TimeCase> time_advance_cases() {
  std::vector<TimeCase> cases;

  cases.push_back({"mte: active head duration2(3,5) is 5", [] {
    World w;
    auto& o = w.object();
    o.active = process(w.future(), make_inf_duration(), {dur2(3, 5)});
    return expect(w.sem.mte(o), fin(5));
  }});

  cases.push_back({"mte: idle object, queued await duration(2,4) is 4", [] {
    World w;
    auto& o = w.object();
    o.queue.push_back(process(w.future(), make_inf_duration(), {RtAwait{gdur(2, 4)}}));
    return expect(w.sem.mte(o), fin(4));
  }});

  cases.push_back({"mte: every object blocked on an unresolved get is infinite", [] {
    World w;
    FutureId f = w.future();
    Substitution attrs{{"f", Value::future(f)}};
    for (int i = 0; i < 2; ++i) {
      auto& o = w.object(attrs);
      o.active = process(w.future(), make_inf_duration(), {get_stmt("f")});
    }
    return expect(w.sem.mte(), TimeBound::infinite());
  }});

  cases.push_back({"mte: conjunction takes the max, duration(2,4) & duration(1,6) is 6", [] {
    World w;
    auto& o = w.object();
    o.queue.push_back(process(w.future(), make_inf_duration(), {RtAwait{gand(gdur(2, 4), gdur(1, 6))}}));
    return expect(w.sem.mte(o), fin(6));
  }});

  cases.push_back({"mte: enabled head (skip) is 0", [] {
    World w;
    auto& o = w.object();
    o.active = process(w.future(), make_inf_duration(), {skip_stmt()});
    return expect(w.sem.mte(o), fin(0));
  }});

  cases.push_back({"mte: true boolean guard is 0", [] {
    World w;
    auto& o = w.object(Substitution{{"b", Value::boolean(true)}});
    o.queue.push_back(process(w.future(), make_inf_duration(), {RtAwait{gbool("b")}}));
    return expect(w.sem.mte(o), fin(0));
  }});

  cases.push_back({"mte: false boolean guard is infinite", [] {
    World w;
    auto& o = w.object(Substitution{{"b", Value::boolean(false)}});
    o.queue.push_back(process(w.future(), make_inf_duration(), {RtAwait{gbool("b")}}));
    return expect(w.sem.mte(o), TimeBound::infinite());
  }});

  cases.push_back({"mte: configuration takes the min over objects (5 vs 4)", [] {
    World w;
    auto& a = w.object();
    a.active = process(w.future(), make_inf_duration(), {dur2(3, 5)});
    auto& b = w.object();
    b.queue.push_back(process(w.future(), make_inf_duration(), {RtAwait{gdur(2, 4)}}));
    return expect(w.sem.mte(), fin(4));
  }});

  cases.push_back({"adv: {deadline 10 | duration2(3,5)} by 2 gives {8 | duration2(1,3)}", [] {
    World w;
    auto& o = w.object();
    o.active = process(w.future(), make_duration(Rational(10)), {dur2(3, 5)});
    w.sem.adv(Rational(2));
    const auto& p = *o.active;
    std::string e = expect_text(p.locals.at("deadline").str(), "Duration(8)");
    if (e.empty()) e = expect_text(render_stmt(p.stack.back()), "duration2(1, 3)");
    return e;
  }});

  cases.push_back({"adv: InfDuration deadline is absorbing", [] {
    World w;
    auto& o = w.object();
    o.queue.push_back(process(w.future(), make_inf_duration(), {skip_stmt()}));
    w.sem.adv(Rational(7));
    return expect_text(o.queue[0].locals.at("deadline").str(), "InfDuration");
  }});

  cases.push_back({"adv: duration(2,4) & b by 2 gives duration(0,2) & b", [] {
    World w;
    auto& o = w.object(Substitution{{"b", Value::boolean(false)}});
    o.queue.push_back(process(w.future(), make_inf_duration(), {RtAwait{gand(gdur(2, 4), gbool("b"))}}));
    w.sem.adv(Rational(2));
    return expect_text(render_stmt(o.queue[0].stack.back()), "await (duration(0, 2) & b)");
  }});

  cases.push_back({"adv: clock moves by delta, queued deadlines drop, non-head terms unchanged", [] {
    World w;
    auto& o = w.object();
    o.active = process(w.future(), make_duration(Rational(5)), {dur2(4, 4), dur2(1, 1)});
    o.queue.push_back(process(w.future(), make_duration(Rational(3, 2)), {skip_stmt()}));
    w.sem.adv(Rational(1, 2));
    std::string e = expect_text(w.cfg.clock.str(), "1/2");
    if (e.empty()) e = expect_text(o.queue[0].locals.at("deadline").str(), "Duration(1)");
    if (e.empty()) e = expect_text(render_stmt(o.active->stack.front()), "duration2(4, 4)");
    if (e.empty()) e = expect_text(render_stmt(o.active->stack.back()), "duration2(1/2, 1/2)");
    if (e.empty()) e = expect_text(o.active->locals.at("deadline").str(), "Duration(9/2)");
    return e;
  }});

  return cases;
}

}  // namespace rtabs::testing

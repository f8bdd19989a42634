#include <gtest/gtest.h>

#include "rtabs/engine/engine.hpp"
#include "rtabs/metrics/outcome.hpp"
#include "rtabs/syntax/parser.hpp"
#include "support.hpp"

using namespace rtabs;
using namespace rtabs::engine;
using rtabs::testing::load_fixture;
using rtabs::testing::load_ok;
using rtabs::testing::run_model;

namespace {

constexpr const char* kServer = R"(
class ServerImp() {
  [Cost: Duration(wc)]
  Bool request(String job, Rat bc, Rat wc) { duration(bc, wc); return True; }
  Unit plain() { skip; }
}
)";

// A harness around Semantics over a caller-built configuration.
struct Harness {
  std::shared_ptr<const Program> program;
  Configuration cfg;
  Semantics sem;

  explicit Harness(const std::string& src) : program(load_ok(src)), sem(program, cfg) { sem.bootstrap(); }

  ObjectState& add(const std::string& cls, const std::string& policy = "default(queue)") {
    ObjectState o;
    o.id = cfg.next_object++;
    o.class_name = cls;
    o.cls = program->find_class(cls);
    o.policy = syntax::parse_expression(policy);
    o.attrs.bind("this", Value::object(o.id));
    cfg.objects.push_back(std::move(o));
    return cfg.objects.back();
  }
};

InvocationMessage request_msg(ObjectId callee, FutureId f) {
  return InvocationMessage{"request", callee,
                           {Value::string("Photo"), Value::number(2), Value::number(2)},
                           f, make_duration(Rational(40)), false, Rational(15)};
}

}  // namespace

TEST(Bind, RequestCarriesArrivalCostAndDeadline) {
  Harness h(std::string(kServer) + "{ }");
  auto& s = h.add("ServerImp");
  ProcessRecord p = h.sem.bind_activation(request_msg(s.id, 9));
  EXPECT_EQ(p.locals.at("arrival"), make_time(15));
  EXPECT_EQ(p.locals.at("cost"), make_duration(Rational(2)));
  EXPECT_EQ(p.locals.at("deadline"), make_duration(Rational(40)));
  EXPECT_EQ(p.locals.at("value"), Value::number(0));
  EXPECT_EQ(p.locals.at("destiny"), Value::future(9));
  EXPECT_EQ(p.locals.at("job"), Value::string("Photo"));
  EXPECT_EQ(Semantics::lift(p).str(),
            "Proc(fut#9, \"request\", Time(15), Duration(2), Duration(40), Time(0), Time(0), False, 0)");
}

TEST(Activate, AppendsToTheQueue) {
  Harness h(std::string(kServer) + "{ }");
  ObjectId id = h.add("ServerImp").id;
  for (FutureId f : {30, 31, 32}) h.cfg.messages.push_back(request_msg(id, f));
  for (int i = 0; i < 3; ++i) h.sem.activate(0);
  const auto& q = h.cfg.objects.back().queue;
  ASSERT_EQ(q.size(), 3u);
  EXPECT_EQ(q[0].pid, 30u);
  EXPECT_EQ(q[1].pid, 31u);
  EXPECT_EQ(q[2].pid, 32u);
}

TEST(Bind, DefaultsForUnannotatedCallAndMethod) {
  auto out = run_model(load_ok(std::string(kServer) + "{ ServerImp s = new ServerImp(); s!plain(); }"), 10);
  const metrics::TraceEvent* act = nullptr;
  for (const auto& e : out.trace) {
    if (e.kind == metrics::EventKind::Activate) act = &e;
  }
  ASSERT_NE(act, nullptr);
  EXPECT_EQ(*act->get("deadline"), "inf");
  EXPECT_EQ(*act->get("critical"), "False");
  EXPECT_EQ(*act->get("cost"), "0");
}

TEST(Lift, EmptyQueueAndSelect) {
  EXPECT_EQ(Semantics::liftall({}), make_nil());
  EXPECT_FALSE(Semantics::select(3, {}));
  std::vector<ProcessRecord> q{rtabs::testing::process(3, make_inf_duration()), rtabs::testing::process(4, make_inf_duration())};
  auto chosen = Semantics::select(4, q);
  ASSERT_TRUE(chosen);
  EXPECT_EQ(chosen->pid, 4u);
}

TEST(Ready, AwaitOnUnresolvedFutureIsExcluded) {
  Harness h("{ }");
  auto& o = h.add("<none>");
  FutureId f = h.cfg.next_future++;
  h.cfg.futures.emplace(f, std::nullopt);
  o.attrs.bind("x", Value::future(f));
  auto guard = make_guard(RtGuard{RtGuard::Future{"x"}});
  o.queue.push_back(rtabs::testing::process(10, make_inf_duration(), {RtAwait{guard}}));
  o.queue.push_back(rtabs::testing::process(11, make_inf_duration(),
                                     {Duration2{TimeBound::finite(0), TimeBound::finite(3)}}));
  o.queue.push_back(rtabs::testing::process(
      12, make_inf_duration(), {SrcStmt{syntax::make_stmt(syntax::SourcePos{}, syntax::SkipStmt{})}}));
  EXPECT_EQ(h.sem.ready_set(o), (std::vector<std::size_t>{1, 2}));
  h.cfg.futures[f] = make_unit();
  EXPECT_EQ(h.sem.ready_set(o), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Schedule, EdfActivatesTheEarlierDeadline) {
  Harness h("{ }");
  auto& o = h.add("<none>", "edf(queue)");
  o.queue.push_back(rtabs::testing::process(20, make_duration(Rational(5))));
  o.queue.push_back(rtabs::testing::process(21, make_duration(Rational(3))));
  ASSERT_TRUE(h.sem.schedule(o));
  ASSERT_TRUE(o.active);
  EXPECT_EQ(o.active->pid, 21u);
  ASSERT_EQ(o.queue.size(), 1u);
  EXPECT_EQ(o.queue[0].pid, 20u);
}

TEST(Return, ResolvesTheFutureAndRemovesTheProcess) {
  Harness h(std::string(kServer) + "{ }");
  auto& s = h.add("ServerImp");
  FutureId f = h.cfg.next_future++;
  h.cfg.futures.emplace(f, std::nullopt);
  h.cfg.messages.push_back(request_msg(s.id, f));
  h.sem.activate(0);
  ASSERT_TRUE(h.sem.schedule(s));
  // duration(bc, wc) becomes duration2(2, 2) and blocks until time passes.
  ASSERT_TRUE(h.sem.step_active(s));
  EXPECT_FALSE(h.sem.step_active(s));
  EXPECT_EQ(h.sem.mte(s), TimeBound::finite(2));
  h.sem.tick(Rational(2));
  ASSERT_TRUE(h.sem.step_active(s));
  ASSERT_TRUE(h.sem.step_active(s));
  EXPECT_FALSE(s.active);
  ASSERT_NE(h.cfg.future_value(f), nullptr);
  EXPECT_EQ(*h.cfg.future_value(f), Value::boolean(true));
}

TEST(Get, BlockedReadDoesNotStep) {
  Harness h("{ }");
  auto& o = h.add("<none>");
  FutureId f = h.cfg.next_future++;
  h.cfg.futures.emplace(f, std::nullopt);
  o.attrs.bind("g", Value::future(f));
  auto get = syntax::make_stmt(syntax::SourcePos{},
                               syntax::AssignStmt{{}, std::nullopt, std::string("x"),
                                                  syntax::GetRhs{syntax::parse_expression("g")}});
  o.active = rtabs::testing::process(30, make_inf_duration(), {SrcStmt{get}});
  EXPECT_FALSE(h.sem.step_active(o));
  EXPECT_FALSE(h.sem.enabled(o, *o.active));
  h.cfg.futures[f] = Value::number(5);
  EXPECT_TRUE(h.sem.step_active(o));
  EXPECT_TRUE(h.sem.step_active(o));
  EXPECT_EQ(o.attrs.at("x"), Value::number(5));
}

class TimeAdvance : public ::testing::TestWithParam<rtabs::testing::TimeCase> {};

TEST_P(TimeAdvance, MatchesTheEquation) {
  std::string failure = GetParam().check();
  EXPECT_TRUE(failure.empty()) << failure;
}

INSTANTIATE_TEST_SUITE_P(Cases, TimeAdvance, ::testing::ValuesIn(rtabs::testing::time_advance_cases()),
                         [](const auto& info) { return "case" + std::to_string(info.index); });

TEST(Run, EmptyMainTerminatesAtZero) {
  auto out = run_model(load_fixture("empty_main.rtabs"), 100);
  EXPECT_EQ(out.result.status, RunStatus::Terminated);
  EXPECT_EQ(out.result.clock, Rational(0));
  EXPECT_TRUE(out.trace.empty());
}

TEST(Run, SingleRequestReturnsTrueAtSeventeen) {
  auto out = run_model(load_fixture("single_request.rtabs"), 1000);
  EXPECT_EQ(out.result.status, RunStatus::Terminated);
  auto outcomes = metrics::derive_outcomes(out.trace);
  const metrics::ProcessOutcome* req = nullptr;
  for (const auto& o : outcomes.completed) {
    if (o.method == "request") req = &o;
  }
  ASSERT_NE(req, nullptr);
  EXPECT_EQ(req->f, Rational(17));
  EXPECT_EQ(req->remaining, TimeBound::finite(38));
  for (const auto& e : out.trace) {
    if (e.kind == metrics::EventKind::Return && e.method == "request") EXPECT_EQ(*e.get("value"), "True");
  }
}

TEST(Run, CircularWaitIsADeadlock) {
  auto out = run_model(load_fixture("deadlock.rtabs"), 1000);
  EXPECT_EQ(out.result.status, RunStatus::Deadlock);
  EXPECT_NE(out.result.message.find("blocked at"), std::string::npos);
}

TEST(Run, MaximalProgressAndTickBounds) {
  // Every tick follows a quiescent configuration and moves by exactly mte.
  Engine eng(load_fixture("media_edf.rtabs"));
  eng.bootstrap();
  int ticks = 0;
  run_with_large_stack([&] {
    while (eng.config().clock < Rational(200)) {
      while (eng.step()) {
      }
      if (eng.terminated()) break;
      TimeBound m = eng.mte();
      ASSERT_TRUE(m.is_finite());
      ASSERT_GT(m.value().sign(), 0);
      Rational before = eng.config().clock;
      eng.advance(m.value());
      ASSERT_EQ(eng.config().clock - before, m.value());
      ++ticks;
    }
  });
  EXPECT_GT(ticks, 10);
}

TEST(Run, FutureDisciplineAndIdUniqueness) {
  auto out = run_model(load_fixture("media_sjf.rtabs"), 300);
  std::set<std::uint64_t> resolved, invoked;
  Rational last;
  for (const auto& e : out.trace) {
    EXPECT_GE(e.time, last);
    last = e.time;
    if (e.kind == metrics::EventKind::Resolve) EXPECT_TRUE(resolved.insert(*e.pid).second);
    if (e.kind == metrics::EventKind::Invoke) EXPECT_TRUE(invoked.insert(*e.pid).second);
  }
  for (auto f : resolved) EXPECT_TRUE(invoked.count(f)) << f;
}

TEST(Run, FinishAndRemainingDeadlineAgreeWithEvents) {
  auto out = run_model(load_fixture("media_fifo.rtabs"), 1000);
  for (const auto& o : metrics::derive_outcomes(out.trace).completed) {
    if (o.d.is_infinite()) {
      EXPECT_TRUE(o.remaining.is_infinite());
      continue;
    }
    EXPECT_EQ(o.remaining, TimeBound::finite(o.d.value() - (o.f - o.r))) << o.pid;
  }
}

TEST(Run, ZenoLoopIsCut) {
  auto program = load_ok("class L() { Unit run() { while (True) { skip; } } } { L l = new L(); }");
  EngineOptions opts;
  opts.max_steps_per_instant = 1000;
  auto out = run_model(program, 10, opts);
  EXPECT_EQ(out.result.status, RunStatus::RuntimeError);
  EXPECT_NE(out.result.message.find("without time advancing"), std::string::npos);
}

TEST(Run, EvaluationFailureStopsWithContext) {
  auto program = load_ok("class A() { Unit m() { Int x = 1 / 0; } } { A a = new A(); Fut<Unit> f = a!m(); }");
  auto out = run_model(program, 10);
  EXPECT_EQ(out.result.status, RunStatus::RuntimeError);
  EXPECT_NE(out.result.message.find("ob#2 (A)"), std::string::npos) << out.result.message;
  ASSERT_FALSE(out.trace.empty());
  EXPECT_EQ(out.trace.back().kind, metrics::EventKind::Error);
}

TEST(Sampler, PoliciesPickFromTheInterval) {
  Sampler worst(DurationPolicy::Worst), best(DurationPolicy::Best), uni(DurationPolicy::Uniform, 4);
  TimeBound b = TimeBound::finite(1), w = TimeBound::finite(10);
  EXPECT_EQ(worst.sample(b, w), w);
  EXPECT_EQ(best.sample(b, w), b);
  for (int i = 0; i < 100; ++i) {
    TimeBound d = uni.sample(b, w);
    EXPECT_GE(d, b);
    EXPECT_LE(d, w);
    EXPECT_LE(d.value().denominator(), 1000);
  }
  Sampler a(DurationPolicy::Uniform, 4), c(DurationPolicy::Uniform, 4);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.sample(b, w), c.sample(b, w));
}

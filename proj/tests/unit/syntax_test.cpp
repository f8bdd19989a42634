#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>

#include "rtabs/sched/prelude.hpp"
#include "rtabs/syntax/checker.hpp"
#include "rtabs/syntax/desugar.hpp"
#include "rtabs/syntax/parser.hpp"
#include "rtabs/syntax/printer.hpp"
#include "support.hpp"

using namespace rtabs;
using namespace rtabs::syntax;

namespace {

Diagnostics check_src(std::string_view src) {
  return check_model(sched::with_prelude(parse_model(src)));
}

bool mentions(const Diagnostics& d, std::string_view text) {
  return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) {
    return x.message.find(text) != std::string::npos;
  });
}

std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(RTABS_FIXTURES_DIR)) {
    if (e.path().extension() == ".rtabs") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Body& main_of(const Model& m) { return *m.main; }

const AssignStmt& assign_at(const Body& b, std::size_t i) {
  return std::get<AssignStmt>(b.stmts.at(i)->node);
}

void collect_plain(const Block& b, std::multiset<std::string>& out) {
  for (const auto& s : b) {
    if (auto* i = std::get_if<IfStmt>(&s->node)) {
      collect_plain(i->then_block, out);
      if (i->else_block) collect_plain(*i->else_block, out);
    } else if (auto* w = std::get_if<WhileStmt>(&s->node)) {
      collect_plain(w->body, out);
    } else if (auto* a = std::get_if<AssignStmt>(&s->node)) {
      if (std::holds_alternative<ExprRhs>(a->rhs)) out.insert(print_stmt(*s));
    } else if (!std::holds_alternative<AwaitCallStmt>(s->node)) {
      out.insert(print_stmt(*s));
    }
  }
}

std::multiset<std::string> plain_statements(const Model& m) {
  std::multiset<std::string> out;
  for (const auto& c : m.classes) {
    for (const auto& meth : c.methods) collect_plain(meth.body.stmts, out);
  }
  if (m.main) collect_plain(m.main->stmts, out);
  return out;
}

}  // namespace

// parse_model

TEST(Parse, DurationDatatypeHasTwoConstructors) {
  Model m = parse_model("data Duration = Duration(Rat) | InfDuration;");
  ASSERT_EQ(m.datatypes.size(), 1u);
  EXPECT_EQ(m.datatypes[0].name, "Duration");
  ASSERT_EQ(m.datatypes[0].constructors.size(), 2u);
  EXPECT_EQ(m.datatypes[0].constructors[0].name, "Duration");
  EXPECT_EQ(m.datatypes[0].constructors[1].name, "InfDuration");
}

TEST(Parse, EmptyFileIsEmptyModel) {
  Model m = parse_model("");
  EXPECT_TRUE(m.datatypes.empty());
  EXPECT_TRUE(m.functions.empty());
  EXPECT_TRUE(m.classes.empty());
  EXPECT_FALSE(m.main.has_value());
}

TEST(Parse, MalformedExpressionReportsTheSemicolon) {
  try {
    parse_model("def Int f(Int x) = x + ;", "f.rtabs");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.diagnostic().pos.line, 1);
    EXPECT_EQ(e.diagnostic().pos.column, 24);
    EXPECT_FALSE(e.expected().empty());
    EXPECT_NE(e.diagnostic().str().find("f.rtabs:1:24: error"), std::string::npos);
  }
}

TEST(Parse, TryParseCollectsDiagnostic) {
  auto r = try_parse_model("class {", "x.rtabs");
  EXPECT_FALSE(r.model);
  ASSERT_EQ(r.diagnostics.size(), 1u);
}

TEST(Parse, CommentsAndRationalLiterals) {
  Model m = parse_model("// line\n/* block\n */ def Rat half() = 1/2;");
  ASSERT_EQ(m.functions.size(), 1u);
  EXPECT_EQ(print_expr(*m.functions[0].body), "1/2");
}

TEST(Parse, PrecedenceMultiplicationBindsTighter) {
  ExprPtr e = parse_expression("1 + 2 * 3 < 7 && True || False");
  EXPECT_EQ(print_expr(*e), "(((1 + (2 * 3)) < 7) && True) || False");
}

TEST(Parse, NowIsAPrimaryExpression) {
  ExprPtr e = parse_expression("now");
  EXPECT_TRUE(std::holds_alternative<NowExpr>(e->node));
}

TEST(Parse, AnnotationsOnCallsAndClasses) {
  Model m = parse_model(R"(
    [Scheduler: edf(queue)]
    class C() { [Cost: Duration(3)] Unit m() { skip; } }
    { C c = new C(); [Deadline: Duration(5), Critical: True] c!m(); })");
  ASSERT_EQ(m.classes.size(), 1u);
  EXPECT_TRUE(m.classes[0].annotations.has(AnnotationKind::Scheduler));
  EXPECT_TRUE(m.classes[0].methods[0].annotations.has(AnnotationKind::Cost));
  const AssignStmt& call = assign_at(main_of(m), 1);
  EXPECT_TRUE(call.annotations.has(AnnotationKind::Deadline));
  EXPECT_TRUE(call.annotations.has(AnnotationKind::Critical));
}

// check_model

TEST(Check, UnknownFunction) {
  auto d = check_src("{ Int x = foo(1); }");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].message, "unknown function foo");
}

TEST(Check, ReservedLocalDestiny) {
  auto d = check_src("class C() { Unit m() { Time destiny; skip; } } { }");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NE(d[0].message.find("reserved name"), std::string::npos);
}

TEST(Check, EveryReservedNameIsRejectedAsLocal) {
  for (const char* name : kReservedNames) {
    std::string src = std::string("class C() { Unit m() { Int ") + name + "; skip; } } { }";
    auto d = check_src(src);
    EXPECT_TRUE(mentions(d, "reserved name")) << name;
  }
}

TEST(Check, ValueMayBeAssigned) {
  EXPECT_TRUE(check_src("class C() { Unit m() { value = 3; } } { }").empty());
}

TEST(Check, MediaModelIsClean) {
  for (const char* f : {"media_sjf.rtabs", "media_edf.rtabs", "media_fifo.rtabs", "single_request.rtabs"}) {
    auto d = check_src(rtabs::testing::read_text(rtabs::testing::fixture_path(f)));
    EXPECT_TRUE(d.empty()) << f << ": " << (d.empty() ? "" : d[0].str());
  }
}

TEST(Check, AllFixturesExceptTheClashAreClean) {
  for (const auto& path : fixture_files()) {
    auto d = check_src(rtabs::testing::read_text(path));
    if (path.find("reserved_clash") != std::string::npos) {
      EXPECT_EQ(d.size(), 1u);
    } else {
      EXPECT_TRUE(d.empty()) << path << ": " << (d.empty() ? "" : d[0].str());
    }
  }
}

TEST(Check, CollectsEveryViolation) {
  auto d = check_src("{ Int x = foo(1); Int y = bar(2); Z z = Q; }");
  EXPECT_TRUE(mentions(d, "unknown function foo"));
  EXPECT_TRUE(mentions(d, "unknown function bar"));
  EXPECT_TRUE(mentions(d, "unknown constructor Q"));
  EXPECT_TRUE(mentions(d, "unknown type Z"));
}

TEST(Check, ArityMismatch) {
  auto d = check_src("def Int f(Int x) = x; { Int y = f(1, 2); }");
  EXPECT_TRUE(mentions(d, "function f expects 1 arguments, got 2"));
}

TEST(Check, AnnotationPlacement) {
  EXPECT_TRUE(mentions(check_src("[Deadline: Duration(1)] class C() { } { }"), "not allowed on a class"));
  EXPECT_TRUE(mentions(check_src("class C() { [Deadline: Duration(1)] Unit m() { skip; } } { }"),
                       "not allowed on a method"));
  EXPECT_TRUE(mentions(
      check_src("class C() { Unit m() { skip; } } { C c = new C(); [Cost: Duration(1)] c!m(); }"),
      "not allowed on a call"));
}

TEST(Check, DestinyAndDeadlineOnlyInMethods) {
  EXPECT_TRUE(mentions(check_src("{ Duration d = deadline; }"), "deadline may only appear"));
  EXPECT_TRUE(mentions(check_src("def Duration f() = deadline; { }"), "deadline may only appear"));
  EXPECT_TRUE(check_src("class C() { Unit m() { Duration d = deadline; } } { }").empty());
}

TEST(Check, MissingInterfaceMethod) {
  auto d = check_src("interface I { Unit m(); } class C() implements I { } { }");
  EXPECT_TRUE(mentions(d, "does not implement method m"));
}

TEST(Check, DuplicateConstructorAcrossDatatypes) {
  auto d = check_src("data A = X; data B = X; { }");
  EXPECT_TRUE(mentions(d, "duplicate constructor X"));
}

// desugar

TEST(Desugar, CallDefaults) {
  Model m = desugar(sched::with_prelude(parse_model(R"(
    class S() { Bool request(String j, Rat b, Rat w) { return True; } }
    { S s = new S(); Fut<Bool> f = s!request("j", 1, 2); })")));
  const AssignStmt& call = assign_at(main_of(m), 1);
  EXPECT_EQ(print_annotations(call.annotations), "[Deadline: InfDuration, Critical: False] ");
}

TEST(Desugar, MethodCostDefault) {
  Model m = desugar(sched::with_prelude(parse_model("class C() { Unit m() { skip; } } { }")));
  const ClassDecl& c = m.classes.back();
  EXPECT_EQ(print_annotations(c.methods[0].annotations), "[Cost: Duration(0)] ");
  EXPECT_EQ(print_annotations(c.annotations), "[Scheduler: default(queue)] ");
}

TEST(Desugar, SynchronousCallBecomesFutureAndGet) {
  Model m = desugar(sched::with_prelude(parse_model(R"(
    interface S { Bool request(String j, Rat b, Rat w); }
    class Srv() implements S { Bool request(String j, Rat b, Rat w) { return True; } }
    { S s = new Srv(); Bool r = s.request("j", 1, 2); })")));
  const Body& b = main_of(m);
  ASSERT_EQ(b.stmts.size(), 3u);
  const AssignStmt& call = assign_at(b, 1);
  ASSERT_TRUE(std::holds_alternative<AsyncCallRhs>(call.rhs));
  ASSERT_TRUE(call.declared_type);
  EXPECT_EQ(call.declared_type->str(), "Fut<Bool>");
  const AssignStmt& get = assign_at(b, 2);
  ASSERT_TRUE(std::holds_alternative<GetRhs>(get.rhs));
  EXPECT_EQ(*get.target, "r");
  EXPECT_EQ(print_expr(*std::get<GetRhs>(get.rhs).future), *call.target);
}

TEST(Desugar, AwaitCallBecomesTriple) {
  Model m = desugar(sched::with_prelude(parse_model(R"(
    class Srv() { Bool request() { return True; } }
    { Srv s = new Srv(); await Bool r = s.request(); })")));
  const Body& b = main_of(m);
  ASSERT_EQ(b.stmts.size(), 4u);
  EXPECT_TRUE(std::holds_alternative<AsyncCallRhs>(assign_at(b, 1).rhs));
  EXPECT_TRUE(std::holds_alternative<AwaitStmt>(b.stmts[2]->node));
  EXPECT_TRUE(std::holds_alternative<GetRhs>(assign_at(b, 3).rhs));
}

TEST(Desugar, ClassSchedulerReachesPlainNew) {
  Model m = desugar(sched::with_prelude(parse_model(R"(
    [Scheduler: fifo(queue)] class C() { }
    { C a = new C(); [Scheduler: edf(queue)] C b = new C(); })")));
  EXPECT_EQ(print_annotations(assign_at(main_of(m), 0).annotations), "[Scheduler: fifo(queue)] ");
  EXPECT_EQ(print_annotations(assign_at(main_of(m), 1).annotations), "[Scheduler: edf(queue)] ");
}

TEST(Desugar, IsIdempotentOnFixtures) {
  for (const auto& path : fixture_files()) {
    Model once = desugar(sched::with_prelude(parse_model(rtabs::testing::read_text(path), path)));
    Model twice = desugar(once);
    EXPECT_EQ(print_model(once), print_model(twice)) << path;
  }
}

TEST(Desugar, KeepsNonCallStatements) {
  for (const auto& path : fixture_files()) {
    Model m = sched::with_prelude(parse_model(rtabs::testing::read_text(path), path));
    Model d = desugar(m);
    auto before = plain_statements(m);
    auto after = plain_statements(d);
    // Await-call triples add `await f?`; everything original survives.
    EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end())) << path;
  }
}

// printer round trip

TEST(Printer, RoundTripFixturesAndPrelude) {
  std::vector<std::pair<std::string, std::string>> sources;
  sources.emplace_back("<prelude>", std::string(sched::prelude_policies()));
  for (const auto& path : fixture_files()) sources.emplace_back(path, rtabs::testing::read_text(path));
  for (const auto& [name, src] : sources) {
    Model m = parse_model(src, name);
    std::string printed = print_model(m);
    Model again = parse_model(printed, name);
    EXPECT_EQ(printed, print_model(again)) << name;
  }
}

TEST(Printer, ExpressionRoundTrip) {
  for (const char* src : {"case l { Nil => 0; Cons(h, _) => h + 1; }", "if a then -1 else b / 3",
                          "!(x == y) || f(g(1), \"s\")", "Cons(Proc(destiny), Nil)"}) {
    ExprPtr e = parse_expression(src);
    EXPECT_EQ(print_expr(*parse_expression(print_expr(*e))), print_expr(*e)) << src;
  }
}

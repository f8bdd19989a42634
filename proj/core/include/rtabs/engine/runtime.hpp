#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rtabs/engine/program.hpp"
#include "rtabs/func/eval.hpp"
#include "rtabs/metrics/trace.hpp"
#include "rtabs/substitution.hpp"
#include "rtabs/syntax/ast.hpp"

namespace rtabs::engine {

// ---------------------------------------------------------------------------
// Runtime statements and guards

struct RtGuard;
using RtGuardPtr = std::shared_ptr<const RtGuard>;

/// A materialized await guard: duration bounds are concrete, boolean and
/// future conditions are re-evaluated on every check.
struct RtGuard {
  struct Bool {
    syntax::ExprPtr expr;
  };
  struct Future {
    std::string var;
  };
  struct Duration {
    TimeBound best;
    TimeBound worst;
  };
  struct And {
    RtGuardPtr lhs;
    RtGuardPtr rhs;
  };
  std::variant<Bool, Future, Duration, And> node;
};

RtGuardPtr make_guard(RtGuard g);

/// Source statement not yet reduced.
struct SrcStmt {
  syntax::StmtPtr stmt;
};
/// `x = v` with v already evaluated (after New-Object, Async-Call, Read-Fut).
struct AssignValue {
  std::optional<std::string> target;
  Value value;
};
struct Duration2 {
  TimeBound best;
  TimeBound worst;
};
struct RtAwait {
  RtGuardPtr guard;
};
struct RtSuspend {};

using RtStmt = std::variant<SrcStmt, AssignValue, Duration2, RtAwait, RtSuspend>;

// ---------------------------------------------------------------------------
// Configuration

struct ProcessRecord {
  FutureId pid = 0;
  std::string method;
  /// Reserved locals, then formals, then declared locals.
  Substitution locals;
  /// Remaining statements; back() is the head.
  std::vector<RtStmt> stack;
  bool dispatched = false;

  const RtStmt* head() const { return stack.empty() ? nullptr : &stack.back(); }
};

struct InvocationMessage {
  std::string method;
  ObjectId callee = 0;
  std::vector<Value> args;
  FutureId future = 0;
  Value deadline;  // Duration value
  bool critical = false;
  Rational timestamp;
};

struct ObjectState {
  ObjectId id = 0;
  std::string class_name;
  const syntax::ClassDecl* cls = nullptr;  // null for the main object
  syntax::ExprPtr policy;
  Substitution attrs;
  std::optional<ProcessRecord> active;
  std::vector<ProcessRecord> queue;
};

struct Configuration {
  std::deque<ObjectState> objects;  // creation order; ids are 1-based positions
  std::vector<InvocationMessage> messages;
  std::map<FutureId, std::optional<Value>> futures;
  Rational clock;
  ObjectId next_object = 1;
  FutureId next_future = 1;

  ObjectState* find_object(ObjectId id);
  const ObjectState* find_object(ObjectId id) const;
  const Value* future_value(FutureId f) const;
};

/// Stable textual rendering. `canonical` sorts messages and attributes so
/// that configurations equal up to AC matching compare equal; process
/// queues keep their order.
std::string render_configuration(const Configuration& cfg, bool canonical);
std::string render_process(const ProcessRecord& p);
std::string render_stmt(const RtStmt& s);
std::string render_guard(const RtGuard& g);

// ---------------------------------------------------------------------------
// Duration sampling

enum class DurationPolicy { Worst, Best, Uniform };
const char* to_string(DurationPolicy p);
std::optional<DurationPolicy> parse_duration_policy(std::string_view text);

class Sampler {
 public:
  explicit Sampler(DurationPolicy policy = DurationPolicy::Worst, std::uint64_t seed = 0)
      : policy_(policy), rng_(seed) {}

  /// Picks one δ in [min(b,w), max(b,w)].
  TimeBound sample(const TimeBound& b, const TimeBound& w);

 private:
  DurationPolicy policy_;
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Errors

/// A stuck configuration: evaluation failure, unknown method, policy error.
class RuntimeError : public std::runtime_error {
 public:
  explicit RuntimeError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Rule primitives shared by the engine and the reference executor

struct EngineOptions {
  DurationPolicy duration_policy = DurationPolicy::Worst;
  std::uint64_t seed = 0;
  std::size_t max_depth = func::kDefaultMaxDepth;
  std::size_t max_steps_per_instant = 5'000'000;
};

class Semantics {
 public:
  Semantics(std::shared_ptr<const Program> program, Configuration& cfg, EngineOptions options = {},
            metrics::Trace* trace = nullptr);

  const Program& program() const { return *program_; }
  Configuration& config() { return *cfg_; }
  func::Evaluator& evaluator() { return ev_; }
  Sampler& sampler() { return sampler_; }

  /// Creates the synthetic main object running the main block.
  void bootstrap();

  // Auxiliary functions.
  ProcessRecord bind_activation(const InvocationMessage& msg);
  static Value lift(const ProcessRecord& p);
  static Value liftall(const std::vector<ProcessRecord>& q);
  static std::optional<ProcessRecord> select(FutureId pid, const std::vector<ProcessRecord>& q);

  Scope scope_of(const ObjectState& o, const ProcessRecord& p) const {
    return Scope(o.attrs).with(p.locals);
  }
  bool guard_holds(const RtGuard& g, const Scope& scope);
  /// Head will neither suspend nor block.
  bool ready(const ObjectState& o, const ProcessRecord& p);
  std::vector<std::size_t> ready_set(const ObjectState& o);
  /// Some instantaneous rule applies to the active process `p`.
  bool enabled(const ObjectState& o, const ProcessRecord& p);

  TimeBound mte(const RtGuard& g, const Scope& scope);
  TimeBound mte(const ObjectState& o, const ProcessRecord& p);
  TimeBound mte(const ObjectState& o);
  TimeBound mte();

  static RtGuardPtr adv(const RtGuardPtr& g, const Rational& delta);
  static void adv(ProcessRecord& p, const Rational& delta);
  /// Advances every process and the clock by `delta`.
  void adv(const Rational& delta);

  /// Materializes an `await` head (samples its duration guards).
  void normalize(const ObjectState& o, ProcessRecord& p);

  // Rules. Each applies exactly one transition, or returns false.
  void activate(std::size_t message_index);
  bool step_active(ObjectState& o);
  bool schedule(ObjectState& o);
  void tick(const Rational& delta);

  void emit(metrics::TraceEvent e);
  void set_trace(metrics::Trace* trace) { trace_ = trace; }

  /// Wraps an evaluation failure with object/process/statement context.
  [[noreturn]] void fail(const ObjectState* o, const ProcessRecord* p, const std::string& what);

 private:
  ObjectId create_object(const syntax::ClassDecl& cls, std::vector<Value> args,
                         syntax::ExprPtr policy);
  FutureId fresh_future();
  void send(ObjectId caller, std::optional<FutureId> caller_pid, InvocationMessage msg);
  void resolve(FutureId f, const Value& v);
  void assign(ObjectState& o, ProcessRecord& p, const std::string& name, Value v);
  void finish_process(ObjectState& o, ProcessRecord& p, const Value& result);
  void exec_src(ObjectState& o, ProcessRecord& p, const syntax::Stmt& s);
  RtGuardPtr materialize(const syntax::Guard& g, const Scope& scope);

  std::shared_ptr<const Program> program_;
  Configuration* cfg_;
  EngineOptions options_;
  func::Evaluator ev_;
  Sampler sampler_;
  metrics::Trace* trace_;
};

}  // namespace rtabs::engine

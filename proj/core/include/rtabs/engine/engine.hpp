#pragma once

#include <functional>
#include <memory>
#include <string>

#include "rtabs/engine/runtime.hpp"

namespace rtabs::engine {

enum class RunStatus { Terminated, TimeLimit, Deadlock, RuntimeError };
const char* to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::Terminated;
  Rational clock;
  std::string message;  // deadlock report or error text
};

/// Deterministic executor. Objects are visited round-robin in creation
/// order; a visit activates the object's oldest pending message (staying on
/// the object), or else applies one rule for its active process or a
/// Schedule and moves on.
class Engine {
 public:
  explicit Engine(std::shared_ptr<const Program> program, EngineOptions options = {});
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Creates the main object. Called implicitly by step() and run_until().
  void bootstrap();

  /// Applies one instantaneous rule; false when the configuration is
  /// quiescent.
  bool step();
  TimeBound mte() { return sem_.mte(); }
  /// Tick by `delta`; precondition 0 < delta <= mte().
  void advance(const Rational& delta);

  /// Maximal-progress loop up to `limit` (events at the limit included).
  RunResult run_until(const Rational& limit);

  bool terminated() const;
  std::string deadlock_report();

  const Configuration& config() const { return cfg_; }
  Semantics& semantics() { return sem_; }
  const metrics::Trace& trace() const { return trace_; }
  metrics::Trace take_trace() { return std::move(trace_); }

 private:
  RunResult run_loop(const Rational& limit);
  bool visit(ObjectState& o, bool& stay);

  Configuration cfg_;
  metrics::Trace trace_;
  Semantics sem_;
  EngineOptions options_;
  std::size_t cursor_ = 0;
  std::size_t steps_this_instant_ = 0;
  bool booted_ = false;
};

/// Runs `fn` on a thread with a large stack so deeply recursive model
/// functions reach the configured depth limit rather than overflowing.
void run_with_large_stack(const std::function<void()>& fn, std::size_t bytes = std::size_t{1} << 30);

}  // namespace rtabs::engine

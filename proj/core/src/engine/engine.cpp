#include "rtabs/engine/engine.hpp"

#include <pthread.h>

#include <cassert>
#include <exception>

namespace rtabs::engine {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Terminated: return "terminated";
    case RunStatus::TimeLimit: return "time_limit";
    case RunStatus::Deadlock: return "deadlock";
    case RunStatus::RuntimeError: return "runtime_error";
  }
  return "?";
}

Engine::Engine(std::shared_ptr<const Program> program, EngineOptions options)
    : sem_(std::move(program), cfg_, options, &trace_), options_(options) {}

void Engine::bootstrap() {
  if (booted_) return;
  booted_ = true;
  sem_.bootstrap();
}

bool Engine::visit(ObjectState& o, bool& stay) {
  stay = false;
  auto& msgs = cfg_.messages;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    if (msgs[i].callee == o.id) {
      sem_.activate(i);
      stay = true;
      return true;
    }
  }
  if (o.active) return sem_.step_active(o);
  return sem_.schedule(o);
}

bool Engine::step() {
  bootstrap();
  std::size_t n = cfg_.objects.size();
  for (std::size_t tried = 0; tried < n; ++tried) {
    if (cursor_ >= cfg_.objects.size()) cursor_ = 0;
    bool stay = false;
    bool progressed = visit(cfg_.objects[cursor_], stay);
    if (!stay) ++cursor_;
    if (progressed) {
      if (++steps_this_instant_ > options_.max_steps_per_instant) {
        sem_.fail(nullptr, nullptr,
                  "more than " + std::to_string(options_.max_steps_per_instant) +
                      " steps without time advancing at clock " + cfg_.clock.str());
      }
      return true;
    }
  }
  // Messages to objects created during this pass are still pending.
  if (!cfg_.messages.empty()) {
    sem_.activate(0);
    return true;
  }
  return false;
}

void Engine::advance(const Rational& delta) {
  assert(delta.sign() > 0);
  sem_.tick(delta);
  steps_this_instant_ = 0;
}

bool Engine::terminated() const {
  if (!cfg_.messages.empty()) return false;
  for (const auto& o : cfg_.objects) {
    if (o.active || !o.queue.empty()) return false;
  }
  return true;
}

std::string Engine::deadlock_report() {
  std::string out = "deadlock at clock " + cfg_.clock.str() + ":";
  for (const auto& o : cfg_.objects) {
    if (!o.active && o.queue.empty()) continue;
    out += "\n  ob#" + std::to_string(o.id) + " (" + o.class_name + ")";
    auto describe = [](const ProcessRecord& p) {
      std::string s = "fut#" + std::to_string(p.pid) + " " + p.method;
      if (const RtStmt* h = p.head()) s += " blocked at `" + render_stmt(*h) + "`";
      return s;
    };
    if (o.active) out += "\n    active " + describe(*o.active);
    for (const auto& p : o.queue) out += "\n    queued " + describe(p);
  }
  return out;
}

RunResult Engine::run_loop(const Rational& limit) {
  bootstrap();
  while (true) {
    while (step()) {
    }
    if (terminated()) return {RunStatus::Terminated, cfg_.clock, ""};
    TimeBound m = mte();
    if (m.is_infinite()) return {RunStatus::Deadlock, cfg_.clock, deadlock_report()};
    if (m.value().sign() <= 0) {
      sem_.fail(nullptr, nullptr, "no time can pass at clock " + cfg_.clock.str() + " but no rule applies");
    }
    if (cfg_.clock + m.value() > limit) return {RunStatus::TimeLimit, cfg_.clock, ""};
    advance(m.value());
  }
}

RunResult Engine::run_until(const Rational& limit) {
  try {
    return run_loop(limit);
  } catch (const RuntimeError& e) {
    return {RunStatus::RuntimeError, cfg_.clock, e.what()};
  }
}

namespace {

struct ThreadJob {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* thread_main(void* arg) {
  auto* job = static_cast<ThreadJob*>(arg);
  try {
    (*job->fn)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_with_large_stack(const std::function<void()>& fn, std::size_t bytes) {
  ThreadJob job{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t tid;
  int rc = pthread_create(&tid, &attr, thread_main, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();  // fall back to the calling thread
    return;
  }
  pthread_join(tid, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace rtabs::engine

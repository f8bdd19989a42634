#include "rtabs/sched/policy.hpp"

#include <algorithm>

namespace rtabs::sched {

FutureId process_pid(const Value& proc) {
  if (!proc.is_constructor("Proc") || proc.constructor_args().size() != 9 ||
      !proc.constructor_args()[0].is_future()) {
    throw EvalError(EvalError::Kind::PolicyError,
                    "scheduling policy returned " + proc.str() + ", expected a Process");
  }
  return proc.constructor_args()[0].as_future();
}

FutureId evaluate_policy(func::Evaluator& ev, const syntax::Expr& policy,
                         std::span<const Value> ready_queue, const Substitution& attrs) {
  Substitution reflected;
  reflected.bind("queue", make_list(ready_queue));
  Value chosen = ev.eval(policy, Scope(attrs).with(reflected));
  FutureId pid = process_pid(chosen);
  bool member = std::any_of(ready_queue.begin(), ready_queue.end(),
                            [&](const Value& p) { return process_pid(p) == pid; });
  if (!member) {
    throw EvalError(EvalError::Kind::PolicyError,
                    "scheduling policy chose fut#" + std::to_string(pid) +
                        ", which is not a ready process");
  }
  return pid;
}

}  // namespace rtabs::sched

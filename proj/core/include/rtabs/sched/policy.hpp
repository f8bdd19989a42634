#pragma once

#include <span>

#include "rtabs/func/eval.hpp"

namespace rtabs::sched {

/// Evaluates a scheduling policy with `queue` bound to the lifted ready
/// processes, layered over the object attributes, and returns the pid of the
/// chosen process. Throws EvalError(PolicyError) when the result is not a
/// Process value or names a pid outside `ready_queue`.
FutureId evaluate_policy(func::Evaluator& ev, const syntax::Expr& policy,
                         std::span<const Value> ready_queue, const Substitution& attrs);

/// Pid of a lifted `Proc(...)` value; throws PolicyError for anything else.
FutureId process_pid(const Value& proc);

}  // namespace rtabs::sched

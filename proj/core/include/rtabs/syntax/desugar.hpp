#pragma once

#include "rtabs/syntax/ast.hpp"

namespace rtabs::syntax {

/// Inserts annotation defaults and expands call abbreviations:
///   - call statements get `Deadline: InfDuration` and `Critical: False`
///   - methods get `Cost: Duration(0)`
///   - classes get `Scheduler: default(queue)`; `new` statements inherit the
///     class scheduler unless annotated themselves
///   - `v = o.m(args)` becomes `Fut<T> f = o!m(args); v = f.get;`
///   - `await v = o.m(args)` becomes `Fut<T> f = o!m(args); await f?; v = f.get;`
/// Expects a model that passed check_model. Idempotent.
Model desugar(const Model& m);

}  // namespace rtabs::syntax

#pragma once

#include <string_view>

#include "rtabs/syntax/ast.hpp"

namespace rtabs::sched {

/// Source text of the prelude: List, Duration/Time algebra, Process
/// observers and the scheduler library (default, scheduler, edf, fifo, fp,
/// dp, sjf, sjfdp, condScheduler, lengthsensitive).
std::string_view prelude_policies();

/// The parsed prelude (file name `<prelude>`), parsed once.
const syntax::Model& prelude_model();

/// Prelude declarations followed by those of `user`.
syntax::Model with_prelude(syntax::Model user);

}  // namespace rtabs::sched

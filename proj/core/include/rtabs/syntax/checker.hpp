#pragma once

#include "rtabs/syntax/ast.hpp"
#include "rtabs/syntax/diagnostics.hpp"

namespace rtabs::syntax {

/// Name, arity and annotation-placement checks. Every violation becomes one
/// diagnostic; checking never stops at the first problem. Type checking is
/// nominal only: expression types are not inferred.
Diagnostics check_model(const Model& m);

}  // namespace rtabs::syntax

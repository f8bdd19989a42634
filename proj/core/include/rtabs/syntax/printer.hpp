#pragma once

#include <string>

#include "rtabs/syntax/ast.hpp"

namespace rtabs::syntax {

// Source renderers. Output reparses to a structurally identical tree:
// nested operators are parenthesized, declarations print in category order
// (datatypes, functions, interfaces, classes, main block).

std::string print_expr(const Expr& e);
std::string print_pattern(const Pattern& p);
std::string print_guard(const Guard& g);
std::string print_annotations(const AnnotationSet& a);
/// Single statement; compound statements span several lines.
std::string print_stmt(const Stmt& s, int indent = 0);
std::string print_model(const Model& m);

}  // namespace rtabs::syntax

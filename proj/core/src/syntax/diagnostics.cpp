#include "rtabs/syntax/diagnostics.hpp"

#include <algorithm>

namespace rtabs::syntax {

std::string Diagnostic::str() const {
  return pos.file_name() + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
         ": " + (severity == Severity::Error ? "error" : "warning") + ": " + message;
}

bool has_errors(const Diagnostics& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace rtabs::syntax

#include "rtabs/sched/prelude.hpp"

#include "rtabs/syntax/parser.hpp"

namespace rtabs::sched {

extern const std::string_view kPreludeSource;

std::string_view prelude_policies() { return kPreludeSource; }

const syntax::Model& prelude_model() {
  static const syntax::Model model = syntax::parse_model(kPreludeSource, "<prelude>");
  return model;
}

syntax::Model with_prelude(syntax::Model user) {
  syntax::Model out = prelude_model();
  out.append(std::move(user));
  return out;
}

}  // namespace rtabs::sched

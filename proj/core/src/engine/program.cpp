#include "rtabs/engine/program.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rtabs/sched/prelude.hpp"
#include "rtabs/syntax/checker.hpp"
#include "rtabs/syntax/desugar.hpp"
#include "rtabs/syntax/parser.hpp"

namespace rtabs::engine {

using namespace rtabs::syntax;

namespace {

void collect_locals(const Block& b, std::vector<std::string>& out) {
  for (const auto& s : b) {
    if (auto* a = std::get_if<AssignStmt>(&s->node); a && a->declared_type && a->target) {
      out.push_back(*a->target);
    } else if (auto* i = std::get_if<IfStmt>(&s->node)) {
      collect_locals(i->then_block, out);
      if (i->else_block) collect_locals(*i->else_block, out);
    } else if (auto* w = std::get_if<WhileStmt>(&s->node)) {
      collect_locals(w->body, out);
    }
  }
}

std::vector<std::string> body_locals(const Body& body) {
  std::vector<std::string> out;
  for (const auto& l : body.locals) out.push_back(l.name);
  collect_locals(body.stmts, out);
  return out;
}

}  // namespace

Program::Program(Model desugared) : model_(std::move(desugared)), functions_(model_) {
  for (const auto& c : model_.classes) {
    classes_[c.name] = &c;
    for (const auto& m : c.methods) locals_[&m.body] = body_locals(m.body);
  }
  if (model_.main) locals_[&*model_.main] = body_locals(*model_.main);
  default_policy_ = parse_expression("default(queue)", "<default-scheduler>");
}

const ClassDecl* Program::find_class(std::string_view name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : it->second;
}

const std::vector<std::string>& Program::locals_of(const Body& body) const {
  static const std::vector<std::string> kEmpty;
  auto it = locals_.find(&body);
  return it == locals_.end() ? kEmpty : it->second;
}

LoadResult load_program(std::string_view source, const std::string& file_name) {
  LoadResult result;
  auto parsed = try_parse_model(source, file_name);
  if (!parsed.model) {
    result.diagnostics = std::move(parsed.diagnostics);
    return result;
  }
  Model full = sched::with_prelude(std::move(*parsed.model));
  result.diagnostics = check_model(full);
  if (has_errors(result.diagnostics)) return result;
  result.program = std::make_shared<const Program>(desugar(full));
  return result;
}

LoadResult load_program_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_program(ss.str(), path);
}

}  // namespace rtabs::engine

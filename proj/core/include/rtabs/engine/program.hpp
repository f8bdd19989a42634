#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtabs/func/eval.hpp"
#include "rtabs/syntax/ast.hpp"
#include "rtabs/syntax/diagnostics.hpp"

namespace rtabs::engine {

/// A checked, desugared model (prelude included) with lookup tables.
/// Runtime structures point into the model, so a Program is never moved.
class Program {
 public:
  explicit Program(syntax::Model desugared);
  Program(const Program&) = delete;
  Program& operator=(const Program&) = delete;

  const syntax::Model& model() const { return model_; }
  const func::FunctionTable& functions() const { return functions_; }
  const syntax::ClassDecl* find_class(std::string_view name) const;
  /// Every local of a method body: hoisted declarations plus `T x = ...;`
  /// statements anywhere in the body.
  const std::vector<std::string>& locals_of(const syntax::Body& body) const;
  /// Policy used by objects without a scheduler annotation.
  const syntax::ExprPtr& default_policy() const { return default_policy_; }

 private:
  syntax::Model model_;
  func::FunctionTable functions_;
  std::map<std::string, const syntax::ClassDecl*, std::less<>> classes_;
  std::map<const syntax::Body*, std::vector<std::string>> locals_;
  syntax::ExprPtr default_policy_;
};

struct LoadResult {
  std::shared_ptr<const Program> program;
  syntax::Diagnostics diagnostics;

  bool ok() const { return program != nullptr; }
};

/// Parses `source`, prepends the prelude, checks and desugars.
LoadResult load_program(std::string_view source, const std::string& file_name);
LoadResult load_program_file(const std::string& path);

}  // namespace rtabs::engine

#include "rtabs/syntax/ast.hpp"

#include <algorithm>

namespace rtabs::syntax {

std::string TypeRef::str() const {
  std::string out = name;
  if (!args.empty()) {
    out += '<';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ", ";
      out += args[i].str();
    }
    out += '>';
  }
  return out;
}

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Not: return "!";
    case UnaryOp::Neg: return "-";
  }
  return "?";
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

const char* to_string(AnnotationKind kind) {
  switch (kind) {
    case AnnotationKind::Deadline: return "Deadline";
    case AnnotationKind::Cost: return "Cost";
    case AnnotationKind::Critical: return "Critical";
    case AnnotationKind::Scheduler: return "Scheduler";
  }
  return "?";
}

const Annotation* AnnotationSet::find(AnnotationKind kind) const {
  for (const auto& a : items) {
    if (a.kind == kind) return &a;
  }
  return nullptr;
}

void AnnotationSet::set(Annotation a) {
  for (auto& existing : items) {
    if (existing.kind == a.kind) {
      existing = std::move(a);
      return;
    }
  }
  items.push_back(std::move(a));
}

const MethodDecl* ClassDecl::find_method(std::string_view method) const {
  for (const auto& m : methods) {
    if (m.sig.name == method) return &m;
  }
  return nullptr;
}

void Model::append(Model other) {
  auto move_all = [](auto& dst, auto& src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
  };
  move_all(datatypes, other.datatypes);
  move_all(functions, other.functions);
  move_all(interfaces, other.interfaces);
  move_all(classes, other.classes);
  if (other.main) main = std::move(other.main);
}

bool is_reserved_name(std::string_view name) {
  return std::any_of(std::begin(kReservedNames), std::end(kReservedNames),
                     [&](const char* r) { return name == r; });
}

}  // namespace rtabs::syntax

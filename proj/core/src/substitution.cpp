#include "rtabs/substitution.hpp"

#include "rtabs/errors.hpp"

namespace rtabs {

Substitution::Substitution(std::initializer_list<Entry> entries) {
  for (const auto& [name, value] : entries) bind(name, value);
}

void Substitution::bind(std::string name, Value value) {
  if (Value* existing = find(name)) {
    *existing = std::move(value);
    return;
  }
  entries_.emplace_back(std::move(name), std::move(value));
}

const Value* Substitution::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.first == name) return &e.second;
  }
  return nullptr;
}

Value* Substitution::find(std::string_view name) {
  for (auto& e : entries_) {
    if (e.first == name) return &e.second;
  }
  return nullptr;
}

const Value& Substitution::at(std::string_view name) const {
  if (const Value* v = find(name)) return *v;
  throw EvalError(EvalError::Kind::UnboundVariable, "unbound variable " + std::string(name));
}

Substitution Substitution::compose(const Substitution& other) const {
  Substitution out = *this;
  for (const auto& [name, value] : other) out.bind(name, value);
  return out;
}

}  // namespace rtabs

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtabs/value.hpp"

namespace rtabs {

/// Ordered mapping from variable names to values. Binding an existing
/// name overwrites it in place, so iteration order is first-binding order.
class Substitution {
 public:
  using Entry = std::pair<std::string, Value>;

  Substitution() = default;
  Substitution(std::initializer_list<Entry> entries);

  void bind(std::string name, Value value);
  const Value* find(std::string_view name) const;
  Value* find(std::string_view name);
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  /// Throws EvalError(UnboundVariable) when the name is not bound.
  const Value& at(std::string_view name) const;

  /// `this ∘ other`: bindings of `other` win on lookup.
  Substitution compose(const Substitution& other) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<Entry> entries_;
};

/// A read-only stack of substitutions searched right to left, i.e. the
/// composition `σ1 ∘ σ2 ∘ ...` without copying any of them.
class Scope {
 public:
  Scope() = default;
  explicit Scope(const Substitution& base) { layers_.push_back(&base); }

  Scope with(const Substitution& top) const {
    Scope s = *this;
    s.layers_.push_back(&top);
    return s;
  }

  const Value* find(std::string_view name) const {
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
      if (const Value* v = (*it)->find(name)) return v;
    }
    return nullptr;
  }

 private:
  std::vector<const Substitution*> layers_;
};

}  // namespace rtabs

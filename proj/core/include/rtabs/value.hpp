#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rtabs/rational.hpp"

namespace rtabs {

using ObjectId = std::uint64_t;
using FutureId = std::uint64_t;

struct ObjectRef {
  ObjectId id;
  friend bool operator==(ObjectRef, ObjectRef) = default;
};

struct FutureRef {
  FutureId id;
  friend bool operator==(FutureRef, FutureRef) = default;
};

struct NullRef {
  friend bool operator==(NullRef, NullRef) = default;
};

class Value;

struct ConstructorData {
  std::string name;
  std::vector<Value> args;
};

/// An evaluated term. Int and Rat share the exact-rational representation;
/// Time, Duration, List, Unit and Process are ordinary constructor values of
/// the prelude datatypes. Values are immutable and cheap to copy.
class Value {
 public:
  enum class Kind { Bool, Number, String, Constructor, Object, Future, Null };

  Value() : data_(NullRef{}) {}

  static Value boolean(bool b) { return Value(b); }
  static Value number(Rational r) { return Value(std::move(r)); }
  static Value string(std::string s) { return Value(std::move(s)); }
  static Value constructor(std::string name, std::vector<Value> args = {});
  static Value object(ObjectId id) { return Value(ObjectRef{id}); }
  static Value future(FutureId id) { return Value(FutureRef{id}); }
  static Value null() { return Value(); }

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_bool() const { return kind() == Kind::Bool; }
  bool is_number() const { return kind() == Kind::Number; }
  bool is_string() const { return kind() == Kind::String; }
  bool is_constructor() const { return kind() == Kind::Constructor; }
  bool is_constructor(std::string_view name) const;
  bool is_object() const { return kind() == Kind::Object; }
  bool is_future() const { return kind() == Kind::Future; }
  bool is_null() const { return kind() == Kind::Null; }

  // Accessors throw EvalError(TypeError) on a kind mismatch.
  bool as_bool() const;
  const Rational& as_number() const;
  const std::string& as_string() const;
  const std::string& constructor_name() const;
  std::span<const Value> constructor_args() const;
  ObjectId as_object() const;
  FutureId as_future() const;

  /// Source-like rendering: `True`, `3/2`, `"job"`, `Cons(1, Nil)`,
  /// `null`; runtime references print as `ob#N` / `fut#N`.
  std::string str() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  using Data = std::variant<bool, Rational, std::string, std::shared_ptr<const ConstructorData>,
                            ObjectRef, FutureRef, NullRef>;
  template <typename T>
  explicit Value(T v) : data_(std::move(v)) {}

  Data data_;
};

std::string describe_kind(Value::Kind kind);

// Helpers for the prelude's Time/Duration/List/Unit datatypes.
Value make_time(Rational r);
Value make_duration(Rational r);
Value make_inf_duration();
Value make_duration(const TimeBound& b);
Value make_unit();
Value make_nil();
Value make_cons(Value head, Value tail);
Value make_list(std::span<const Value> items);

bool is_duration(const Value& v);
bool is_time(const Value& v);

/// `Duration(r)` -> finite r, `InfDuration` -> infinite. Throws on other values.
TimeBound duration_bound(const Value& v);
/// `Time(r)` -> r. Throws on other values.
Rational time_value(const Value& v);
/// Accepts a number, `Duration(r)` or `InfDuration` (used by duration
/// statements and guards whose arguments are Rat in Fig.-6-style models).
TimeBound as_time_amount(const Value& v);
/// Collects a `Cons`/`Nil` chain. Throws on a malformed list.
std::vector<Value> list_elements(const Value& v);

/// Ordering behind the `<`, `<=`, `>`, `>=` operators: numbers, strings,
/// `Time` values and `Duration` values (InfDuration is the maximum).
/// Throws EvalError(TypeError) for incomparable operands.
std::strong_ordering compare_values(const Value& a, const Value& b);

}  // namespace rtabs

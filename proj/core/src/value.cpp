#include "rtabs/value.hpp"

#include "rtabs/errors.hpp"

namespace rtabs {

namespace {

[[noreturn]] void kind_mismatch(const char* wanted, const Value& got) {
  throw EvalError(EvalError::Kind::TypeError,
                  std::string("expected ") + wanted + ", got " + got.str());
}

void append_quoted(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void render(std::string& out, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Bool: out += v.as_bool() ? "True" : "False"; break;
    case Value::Kind::Number: out += v.as_number().str(); break;
    case Value::Kind::String: append_quoted(out, v.as_string()); break;
    case Value::Kind::Constructor: {
      out += v.constructor_name();
      auto args = v.constructor_args();
      if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i) out += ", ";
          render(out, args[i]);
        }
        out += ')';
      }
      break;
    }
    case Value::Kind::Object: out += "ob#" + std::to_string(v.as_object()); break;
    case Value::Kind::Future: out += "fut#" + std::to_string(v.as_future()); break;
    case Value::Kind::Null: out += "null"; break;
  }
}

}  // namespace

Value Value::constructor(std::string name, std::vector<Value> args) {
  return Value(std::shared_ptr<const ConstructorData>(
      std::make_shared<ConstructorData>(ConstructorData{std::move(name), std::move(args)})));
}

bool Value::is_constructor(std::string_view name) const {
  return is_constructor() && constructor_name() == name;
}

bool Value::as_bool() const {
  if (auto* b = std::get_if<bool>(&data_)) return *b;
  kind_mismatch("Bool", *this);
}

const Rational& Value::as_number() const {
  if (auto* r = std::get_if<Rational>(&data_)) return *r;
  kind_mismatch("a number", *this);
}

const std::string& Value::as_string() const {
  if (auto* s = std::get_if<std::string>(&data_)) return *s;
  kind_mismatch("String", *this);
}

const std::string& Value::constructor_name() const {
  if (auto* c = std::get_if<std::shared_ptr<const ConstructorData>>(&data_)) return (*c)->name;
  kind_mismatch("a constructor term", *this);
}

std::span<const Value> Value::constructor_args() const {
  if (auto* c = std::get_if<std::shared_ptr<const ConstructorData>>(&data_)) return (*c)->args;
  kind_mismatch("a constructor term", *this);
}

ObjectId Value::as_object() const {
  if (auto* o = std::get_if<ObjectRef>(&data_)) return o->id;
  kind_mismatch("an object reference", *this);
}

FutureId Value::as_future() const {
  if (auto* f = std::get_if<FutureRef>(&data_)) return f->id;
  kind_mismatch("a future", *this);
}

std::string Value::str() const {
  std::string out;
  render(out, *this);
  return out;
}

bool operator==(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return false;
  if (a.is_constructor()) {
    const auto& ca = *std::get<std::shared_ptr<const ConstructorData>>(a.data_);
    const auto& cb = *std::get<std::shared_ptr<const ConstructorData>>(b.data_);
    if (&ca == &cb) return true;
    return ca.name == cb.name && ca.args == cb.args;
  }
  return a.data_ == b.data_;
}

std::string describe_kind(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::Bool: return "Bool";
    case Value::Kind::Number: return "number";
    case Value::Kind::String: return "String";
    case Value::Kind::Constructor: return "constructor term";
    case Value::Kind::Object: return "object reference";
    case Value::Kind::Future: return "future";
    case Value::Kind::Null: return "null";
  }
  return "?";
}

Value make_time(Rational r) { return Value::constructor("Time", {Value::number(std::move(r))}); }
Value make_duration(Rational r) {
  return Value::constructor("Duration", {Value::number(std::move(r))});
}
Value make_inf_duration() { return Value::constructor("InfDuration"); }
Value make_duration(const TimeBound& b) {
  return b.is_infinite() ? make_inf_duration() : make_duration(b.value());
}
Value make_unit() { return Value::constructor("Unit"); }
Value make_nil() { return Value::constructor("Nil"); }
Value make_cons(Value head, Value tail) {
  return Value::constructor("Cons", {std::move(head), std::move(tail)});
}
Value make_list(std::span<const Value> items) {
  Value list = make_nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) list = make_cons(*it, std::move(list));
  return list;
}

bool is_duration(const Value& v) {
  if (!v.is_constructor()) return false;
  if (v.constructor_name() == "InfDuration") return v.constructor_args().empty();
  return v.constructor_name() == "Duration" && v.constructor_args().size() == 1 &&
         v.constructor_args()[0].is_number();
}

bool is_time(const Value& v) {
  return v.is_constructor("Time") && v.constructor_args().size() == 1 &&
         v.constructor_args()[0].is_number();
}

TimeBound duration_bound(const Value& v) {
  if (!is_duration(v)) kind_mismatch("a Duration", v);
  if (v.constructor_name() == "InfDuration") return TimeBound::infinite();
  return TimeBound::finite(v.constructor_args()[0].as_number());
}

Rational time_value(const Value& v) {
  if (!is_time(v)) kind_mismatch("a Time", v);
  return v.constructor_args()[0].as_number();
}

TimeBound as_time_amount(const Value& v) {
  if (v.is_number()) return TimeBound::finite(v.as_number());
  if (is_duration(v)) return duration_bound(v);
  kind_mismatch("a number or Duration", v);
}

std::vector<Value> list_elements(const Value& v) {
  std::vector<Value> out;
  const Value* cur = &v;
  while (true) {
    if (cur->is_constructor("Nil")) return out;
    if (!cur->is_constructor("Cons") || cur->constructor_args().size() != 2) {
      kind_mismatch("a List", v);
    }
    out.push_back(cur->constructor_args()[0]);
    cur = &cur->constructor_args()[1];
  }
}

std::strong_ordering compare_values(const Value& a, const Value& b) {
  if (a.is_number() && b.is_number()) return a.as_number() <=> b.as_number();
  if (a.is_string() && b.is_string()) return a.as_string() <=> b.as_string();
  if (is_time(a) && is_time(b)) return time_value(a) <=> time_value(b);
  if (is_duration(a) && is_duration(b)) return duration_bound(a) <=> duration_bound(b);
  throw EvalError(EvalError::Kind::TypeError,
                  "cannot compare " + a.str() + " with " + b.str());
}

const char* to_string(EvalError::Kind kind) {
  switch (kind) {
    case EvalError::Kind::MatchFailure: return "match failure";
    case EvalError::Kind::UnboundVariable: return "unbound variable";
    case EvalError::Kind::DivisionByZero: return "division by zero";
    case EvalError::Kind::TypeError: return "type error";
    case EvalError::Kind::UnknownFunction: return "unknown function";
    case EvalError::Kind::RecursionLimit: return "recursion limit";
    case EvalError::Kind::PolicyError: return "policy error";
  }
  return "error";
}

}  // namespace rtabs

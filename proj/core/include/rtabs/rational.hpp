#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace rtabs {

/// Exact arbitrary-precision rational, always in lowest terms with a
/// positive denominator. Serialized as `p/q`, or `p` when integral.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : q_(static_cast<long>(n)) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses `p`, `-p` or `p/q`. Throws std::invalid_argument on bad input
  /// or a zero denominator.
  static Rational parse(std::string_view text);

  bool is_integer() const { return q_.get_den() == 1; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  const mpz_class& numerator() const { return q_.get_num(); }
  const mpz_class& denominator() const { return q_.get_den(); }

  /// Floor of the value, truncated to int64 (callers only use this for
  /// small counters such as list lengths).
  std::int64_t to_int64() const;

  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// A non-negative-or-infinite time amount, used where the semantics needs
/// `∞` next to finite rationals (mte results, worst-case bounds).
class TimeBound {
 public:
  static TimeBound infinite() { return TimeBound(); }
  static TimeBound finite(Rational r) { return TimeBound(std::move(r)); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Precondition: is_finite().
  const Rational& value() const { return value_; }

  std::string str() const { return infinite_ ? "inf" : value_.str(); }

  friend bool operator==(const TimeBound& a, const TimeBound& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const TimeBound& a, const TimeBound& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
      return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }

 private:
  TimeBound() : infinite_(true) {}
  explicit TimeBound(Rational r) : infinite_(false), value_(std::move(r)) {}

  bool infinite_;
  Rational value_;
};

TimeBound min(const TimeBound& a, const TimeBound& b);
TimeBound max(const TimeBound& a, const TimeBound& b);

}  // namespace rtabs

template <>
struct std::hash<rtabs::Rational> {
  std::size_t operator()(const rtabs::Rational& r) const { return r.hash(); }
};

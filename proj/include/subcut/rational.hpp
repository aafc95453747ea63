#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace subcut {

/// Exact rational number. Arithmetic and parse_rational keep it canonical;
/// the two-integer constructor does not reduce, so pass reduced fractions.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or a bare integer. Throws std::invalid_argument on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" for non-integers, plain integer text otherwise.
std::string to_string(const Rational& value);

/// A rational cost or +infinity.
class ExtendedCost {
 public:
  ExtendedCost() = default;
  ExtendedCost(const Rational& value) : value_(value) {}  // NOLINT: implicit by intent
  ExtendedCost(long value) : value_(value) {}             // NOLINT
  ExtendedCost(int value) : value_(value) {}              // NOLINT

  static ExtendedCost infinity() {
    ExtendedCost c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Throws std::domain_error when infinite.
  const Rational& value() const {
    if (infinite_) throw std::domain_error("infinite cost has no finite value");
    return value_;
  }

  ExtendedCost& operator+=(const ExtendedCost& other);

  friend ExtendedCost operator+(ExtendedCost lhs, const ExtendedCost& rhs) {
    lhs += rhs;
    return lhs;
  }

  /// Scaling by a nonnegative rational; infinity times zero is an error.
  friend ExtendedCost operator*(const Rational& factor, const ExtendedCost& cost);

  friend bool operator==(const ExtendedCost& a, const ExtendedCost& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedCost& a, const ExtendedCost& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// "inf" for infinity, otherwise as to_string(Rational).
std::string to_string(const ExtendedCost& cost);

/// Accepts everything parse_rational does plus "inf".
ExtendedCost parse_extended_cost(std::string_view text);

}  // namespace subcut

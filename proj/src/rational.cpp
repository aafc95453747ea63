#include "subcut/rational.hpp"

#include <cctype>

namespace subcut {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_text(num) || (slash != std::string_view::npos && !is_integer_text(den)))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);

  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    if (den.front() == '+') den.remove_prefix(1);
    d = mpz_class(std::string(den), 10);
  }
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

ExtendedCost& ExtendedCost::operator+=(const ExtendedCost& other) {
  if (infinite_ || other.infinite_) {
    infinite_ = true;
    value_ = 0;
  } else {
    value_ += other.value_;
  }
  return *this;
}

ExtendedCost operator*(const Rational& factor, const ExtendedCost& cost) {
  if (!cost.infinite_) return ExtendedCost(Rational(factor * cost.value_));
  if (sgn(factor) == 0) throw std::domain_error("infinity multiplied by zero");
  if (sgn(factor) < 0) throw std::domain_error("infinity multiplied by a negative factor");
  return cost;
}

std::strong_ordering operator<=>(const ExtendedCost& a, const ExtendedCost& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const ExtendedCost& cost) {
  return cost.is_infinite() ? std::string("inf") : to_string(cost.value());
}

ExtendedCost parse_extended_cost(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return ExtendedCost::infinity();
  return ExtendedCost(parse_rational(text));
}

}  // namespace subcut

#include "stabilis/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace stabilis {

Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) {
    throw std::invalid_argument("rational: zero denominator");
  }
  // Division normalizes both the sign and the gcd.
  return Rational(num) / Rational(den);
}

Rational make_rational(long long num, long long den) {
  return make_rational(Int(num), Int(den));
}

Cmp compare(const Rational& a, const Rational& b) {
  if (a < b) return Cmp::lt;
  if (a == b) return Cmp::eq;
  return Cmp::gt;
}

namespace {

bool valid_integer_token(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num_part = text.substr(0, slash);
  if (!valid_integer_token(num_part)) {
    throw std::invalid_argument("rational: bad literal '" + std::string(text) + "'");
  }
  const Int num{std::string(num_part)};
  if (slash == std::string_view::npos) {
    return Rational(num);
  }
  std::string_view den_part = text.substr(slash + 1);
  if (!valid_integer_token(den_part)) {
    throw std::invalid_argument("rational: bad literal '" + std::string(text) + "'");
  }
  const Int den{std::string(den_part)};
  if (den == 0) {
    throw std::invalid_argument("rational: zero denominator in '" + std::string(text) + "'");
  }
  return make_rational(num, den);
}

std::string to_string(const Rational& value) {
  const Int& den = denominator(value);
  if (den == 1) return numerator(value).str();
  return numerator(value).str() + "/" + den.str();
}

Int ceil_int(const Rational& value) {
  Int q = numerator(value) / denominator(value);  // truncates toward zero
  if (q * denominator(value) != numerator(value) && value > 0) q += 1;
  return q;
}

}  // namespace stabilis

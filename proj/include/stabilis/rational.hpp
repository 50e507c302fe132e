#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace stabilis {

using Int = boost::multiprecision::cpp_int;

// Exact rational, always in canonical form: gcd(|num|, den) = 1, den > 0,
// zero is 0/1. Every comparison in the library goes through this type; there
// is no floating-point fallback on any decision path.
using Rational = boost::multiprecision::cpp_rational;

enum class Cmp { lt, eq, gt };

// Canonical rational from a numerator/denominator pair.
// Throws std::invalid_argument when den == 0.
Rational make_rational(const Int& num, const Int& den);
Rational make_rational(long long num, long long den = 1);

Cmp compare(const Rational& a, const Rational& b);

// Literal form used by every file format and report: "p/q" or the integer
// shorthand "p". Signs are accepted on either part; the denominator must be
// nonzero.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

// Smallest integer >= value.
Int ceil_int(const Rational& value);

}  // namespace stabilis

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace lipeq {

using BigInt = boost::multiprecision::cpp_int;

// Exact rationals. cpp_rational maintains the canonical form the rest of the
// code relies on: gcd(num, den) == 1 and den > 0.
using Rational = boost::multiprecision::cpp_rational;

Rational rat_pow(const Rational& base, unsigned exp);

// Rational bracket around sqrt(q) for q >= 0: lower*lower <= q <= upper*upper,
// with upper - lower <= 2^-62. Needed where 2D Euclidean lengths are
// irrational but we still want certified inequalities.
Rational sqrt_lower_bound(const Rational& q);
Rational sqrt_upper_bound(const Rational& q);

// "p/q", or just "p" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

// Plain decimal (no exponent), `significant` significant digits, round half
// away from zero, trailing fractional zeros trimmed. Pure integer arithmetic,
// so identical bytes on every platform.
std::string to_decimal_string(const Rational& q, int significant = 12);

}  // namespace lipeq

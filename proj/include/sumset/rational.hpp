#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sumset {

// Exact rational with arbitrary-precision numerator and denominator. GMP keeps
// results of arithmetic in lowest terms with a positive denominator; values
// built by hand must go through make_rational or parse_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

// Accepts "p/q", "-p/q", integers, and decimals with an optional exponent
// ("0.125", "-3.1e-1549"). Throws sumset::Error on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

// Human-oriented decimal rendering with `digits` significant digits.
// Switches to scientific notation for very small or very large magnitudes.
std::string to_display(const Rational& q, int digits = 12);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

// 10^exponent, exactly.
Rational pow10(long exponent);
Rational pow(const Rational& base, unsigned long exponent);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace sumset

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace progcover {

// Arbitrary-precision integers and reduced fractions. mpq_class keeps values
// canonical (positive denominator, coprime parts, zero as 0/1) after every
// arithmetic operation; parse_rational enforces the same on input.
using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p/q" or "p" with an optional leading sign; q must be nonzero.
// Whitespace is not allowed. Throws usage_error on malformed text.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

bool is_integer(const Rational& x);

// num / den reduced to lowest terms; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

// gcd over Q: the largest positive rational g with x/g and y/g integers.
// gcd(0, y) = |y|. Both zero yields zero.
Rational rational_gcd(const Rational& x, const Rational& y);

Rational pow(const Rational& base, long exponent);
Integer pow(const Integer& base, unsigned long exponent);

// Value as a signed 64-bit integer when x is an integer in range.
std::optional<long> to_long(const Rational& x);

} // namespace progcover

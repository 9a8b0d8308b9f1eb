#pragma once

// Exact integer and rational arithmetic. Every integral computed by the
// engine is carried as a GMP rational; nothing is ever rounded.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace contactcount {

using Integer = mpz_class;
using Rational = mpq_class;

/// Decimal rendering; integral rationals print without a denominator.
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Always `num/den`, as used by the cache file.
std::string to_fraction_string(const Rational& value);

/// Accepts `p` or `p/q` in decimal. Throws ParseError.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms (gmpxx's two-argument constructor does not reduce).
Rational make_rational(const Integer& num, const Integer& den);

bool is_integer(const Rational& value);

Rational power(const Rational& base, unsigned exponent);
Rational power(const Rational& base, int exponent);  // negative exponents invert

Integer binomial(long n, long k);
Integer factorial(unsigned n);

}  // namespace contactcount

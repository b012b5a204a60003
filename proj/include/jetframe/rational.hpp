#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace jetframe {

/// Exact rational number, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// "num/den" form, or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "num" or "num/den". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned k);

/// x (x-1) ... (x-k+1); zero whenever 0 <= x < k.
long falling_factorial(long x, unsigned k);

Rational binomial(unsigned n, unsigned k);

}  // namespace jetframe

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gepoly {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator, 0 stored as 0/1), which is exactly the invariant
// we need, so we use it directly.
using Rational = mpq_class;
using Integer = mpz_class;

// (2k)!/(2^k k!) = (2k-1)!!, exact.
Rational odd_double_factorial(long k);

// C(n, k) as a big integer; 0 when k < 0 or k > n.
Integer binomial(unsigned long n, unsigned long k);

// Parses "p/q", an integer, or a plain decimal like "-1.25" into an exact
// rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Nearest-double conversion (GMP's mpq -> double is correctly rounded).
double to_double(const Rational& q);

// Exact base^exp for integer exponents (exp may be negative if base != 0).
Rational pow_rational(const Rational& base, long exp);

}  // namespace gepoly

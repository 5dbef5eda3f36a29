// Exact rational arithmetic used as the coefficient field everywhere.
// Backed by GMP; the helpers below enforce canonical form (lowest terms,
// positive denominator) at every construction boundary, so a Rational held
// by a Polynomial is always canonical.
#pragma once

#include <gmpxx.h>

#include <string>

namespace polyinv {

using Rational = mpq_class;
using Integer = mpz_class;

// num/den reduced to lowest terms with a positive denominator.
// Throws std::invalid_argument if den == 0.
Rational make_rational(const Integer& num, const Integer& den);

// Accepts an optional leading '-', then digits, then optionally '/' and
// digits: "123", "-4/7". Anything else (whitespace, empty numerator, zero
// denominator, stray signs) throws std::invalid_argument.
Rational parse_rational(const std::string& text);

// "p" for integers, "p/q" otherwise; q is always positive.
std::string to_string(const Rational& q);

// q^e by powering numerator and denominator separately; canonical input
// gives canonical output without re-reduction.
Rational rational_pow(const Rational& q, unsigned long e);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_negative(const Rational& q) { return sgn(q) < 0; }

}  // namespace polyinv

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace adelic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n", "-n" or "n/d" (d != 0) into a reduced rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" with d > 0 and gcd(n, d) = 1 otherwise.
std::string format_rational(const Rational& q);

Rational make_rational(const Integer& num, const Integer& den);

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// p^e for e >= 0 (an integer) or e < 0 (a reciprocal).
Rational prime_power(std::uint64_t p, long e);

Integer integer_power(std::uint64_t p, unsigned long e);

/// Height max(|num|, den) of a reduced rational.
Integer height(const Rational& q);

int sign(const Rational& q);

}  // namespace adelic

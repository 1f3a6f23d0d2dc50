#pragma once

// Exact p-adic arithmetic on rationals viewed inside Q_p.
//
// Nothing here stores truncated digits as the source of truth: a p-adic value
// is an exact rational, and truncation only appears when a residue is
// extracted (expand, integer_in_ball, crt_solve).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adelic/rational.hpp"

namespace adelic {

/// A rational prime below 2^64, checked on construction.
class Prime {
 public:
  explicit Prime(std::uint64_t value);

  /// Accepts any integer; throws InvalidArgument unless it is a prime below 2^64.
  static Prime from_integer(const Integer& value);

  std::uint64_t value() const noexcept { return value_; }
  Integer as_integer() const;

  auto operator<=>(const Prime&) const = default;

 private:
  std::uint64_t value_;
};

bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n.
Prime next_prime(std::uint64_t n);

/// The n-th prime, 1-based (nth_prime(1) == 2).
Prime nth_prime(std::size_t n);

/// A finite prime or the archimedean place. Orders finite primes first.
class ExtendedPrime {
 public:
  ExtendedPrime(Prime p) : prime_(p) {}  // NOLINT: implicit by design of the place set
  static ExtendedPrime infinity() { return ExtendedPrime(); }

  bool is_infinity() const noexcept { return !prime_.has_value(); }
  const Prime& prime() const;

  std::string to_string() const;

  std::strong_ordering operator<=>(const ExtendedPrime& other) const;
  bool operator==(const ExtendedPrime& other) const = default;

 private:
  ExtendedPrime() = default;
  std::optional<Prime> prime_;
};

/// An integer exponent, or +infinity (the valuation of zero).
class Valuation {
 public:
  Valuation(long v) : value_(v) {}  // NOLINT
  static Valuation infinite() { return Valuation(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  long value() const;

  Valuation operator+(const Valuation& other) const;

  std::strong_ordering operator<=>(const Valuation& other) const;
  bool operator==(const Valuation& other) const = default;

  std::string to_string() const;

 private:
  Valuation() = default;
  std::optional<long> value_;
};

Valuation valuation(const Rational& q, const Prime& p);

/// Valuation of a nonzero integer; +inf for zero.
Valuation valuation(const Integer& n, const Prime& p);

/// p^v * unit_residue, the unit part known modulo p^precision.
struct TruncatedPadic {
  Prime prime;
  Valuation valuation;
  std::optional<Integer> unit_residue;  // in [1, p^precision), coprime to p; absent for zero
  unsigned precision;

  /// p^v * unit_residue as an exact rational (zero for the zero value).
  Rational reconstruct() const;
};

TruncatedPadic expand(const Rational& q, const Prime& p, unsigned precision);

/// Closed ball { x : v_p(x - center) >= radius_exponent }.
struct PadicBall {
  Prime prime;
  Rational center;
  long radius_exponent;
};

bool ball_contains(const PadicBall& ball, const Rational& x);

/// Smallest nonnegative integer in the ball. Throws NoIntegerSolution when the
/// ball holds no p-adic integer.
Integer integer_in_ball(const PadicBall& ball);

/// Reduces a p-integral rational modulo m = p^k; throws NotIntegral otherwise.
Integer residue_mod(const Rational& q, const Prime& p, const Integer& modulus);

struct Congruence {
  Integer residue;
  Integer modulus;
};

/// Smallest nonnegative n with n = residue_i (mod modulus_i) for all i.
/// Throws NonCoprimeModuli if two moduli share a factor.
Integer crt_solve(std::span<const Congruence> congruences);

/// Distinct prime factors of |n| in increasing order (empty for 0 and +-1).
/// Uses trial division, then Pollard-Brent rho on the cofactor.
std::vector<Prime> prime_factors(const Integer& n);

/// Union of the prime factors of numerator and denominator.
std::vector<Prime> prime_support(const Rational& q);

}  // namespace adelic

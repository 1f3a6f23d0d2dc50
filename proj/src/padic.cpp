#include "adelic/padic.hpp"

#include <limits>

#include "adelic/error.hpp"

namespace adelic {

namespace {

Integer to_integer(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

unsigned long remove_factor(Integer& n, const Integer& p) {
  return mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

}  // namespace

// GMP runs Baillie-PSW before any Miller-Rabin rounds; BPSW has no
// pseudoprimes below 2^64, so the answer is exact on this domain.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(to_integer(n).get_mpz_t(), 24) > 0;
}

Prime::Prime(std::uint64_t value) : value_(value) {
  if (!is_prime(value)) {
    fail(ErrorCode::InvalidArgument, std::to_string(value) + " is not prime");
  }
}

Prime Prime::from_integer(const Integer& value) {
  if (value < 2 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64) {
    fail(ErrorCode::InvalidArgument, value.get_str() + " is not a prime below 2^64");
  }
  return Prime(static_cast<std::uint64_t>(value.get_ui()));
}

Integer Prime::as_integer() const { return to_integer(value_); }

Prime next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) {
    if (c == std::numeric_limits<std::uint64_t>::max()) {
      fail(ErrorCode::InvalidArgument, "no prime above " + std::to_string(n) + " below 2^64");
    }
    ++c;
  }
  return Prime(c);
}

Prime nth_prime(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "primes are indexed from 1");
  Prime p(2);
  for (std::size_t i = 1; i < n; ++i) p = next_prime(p.value());
  return p;
}

const Prime& ExtendedPrime::prime() const {
  if (!prime_) fail(ErrorCode::InvalidArgument, "the infinite place has no prime");
  return *prime_;
}

std::string ExtendedPrime::to_string() const {
  return prime_ ? std::to_string(prime_->value()) : std::string("inf");
}

std::strong_ordering ExtendedPrime::operator<=>(const ExtendedPrime& other) const {
  if (is_infinity() || other.is_infinity()) {
    return static_cast<int>(is_infinity()) <=> static_cast<int>(other.is_infinity());
  }
  return prime_->value() <=> other.prime_->value();
}

long Valuation::value() const {
  if (!value_) fail(ErrorCode::InvalidArgument, "valuation is infinite");
  return *value_;
}

Valuation Valuation::operator+(const Valuation& other) const {
  if (is_infinite() || other.is_infinite()) return infinite();
  return Valuation(*value_ + *other.value_);
}

std::strong_ordering Valuation::operator<=>(const Valuation& other) const {
  if (is_infinite() || other.is_infinite()) {
    return static_cast<int>(is_infinite()) <=> static_cast<int>(other.is_infinite());
  }
  return *value_ <=> *other.value_;
}

std::string Valuation::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

Valuation valuation(const Integer& n, const Prime& p) {
  if (n == 0) return Valuation::infinite();
  Integer m = n;
  return Valuation(static_cast<long>(remove_factor(m, p.as_integer())));
}

Valuation valuation(const Rational& q, const Prime& p) {
  if (q == 0) return Valuation::infinite();
  const Integer pz = p.as_integer();
  Integer num = q.get_num();
  Integer den = q.get_den();
  long up = static_cast<long>(remove_factor(num, pz));
  long down = static_cast<long>(remove_factor(den, pz));
  return Valuation(up - down);
}

Integer residue_mod(const Rational& q, const Prime& p, const Integer& modulus) {
  if (modulus == 1) return Integer(0);
  Integer den = q.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    fail(ErrorCode::NotIntegral, format_rational(q) + " is not " +
                                     std::to_string(p.value()) + "-integral");
  }
  Integer r = Integer(q.get_num() * inv) % modulus;
  if (r < 0) r += modulus;
  return r;
}

Rational TruncatedPadic::reconstruct() const {
  if (!unit_residue) return Rational(0);
  return prime_power(prime.value(), valuation.value()) * Rational(*unit_residue);
}

TruncatedPadic expand(const Rational& q, const Prime& p, unsigned precision) {
  if (precision == 0) fail(ErrorCode::InvalidArgument, "precision must be at least 1");
  Valuation v = valuation(q, p);
  if (v.is_infinite()) return TruncatedPadic{p, v, std::nullopt, precision};
  Rational unit = q * prime_power(p.value(), -v.value());
  Integer modulus = integer_power(p.value(), precision);
  return TruncatedPadic{p, v, residue_mod(unit, p, modulus), precision};
}

bool ball_contains(const PadicBall& ball, const Rational& x) {
  return valuation(x - ball.center, ball.prime) >= Valuation(ball.radius_exponent);
}

Integer integer_in_ball(const PadicBall& ball) {
  Valuation vc = valuation(ball.center, ball.prime);
  if (vc.is_infinite()) return Integer(0);
  if (vc.value() < 0) {
    // Every integer x has v(x - c) = v(c), so either all integers qualify or none do.
    if (ball.radius_exponent <= vc.value()) return Integer(0);
    fail(ErrorCode::NoIntegerSolution,
         "ball around " + format_rational(ball.center) + " with radius exponent " +
             std::to_string(ball.radius_exponent) + " holds no " +
             std::to_string(ball.prime.value()) + "-adic integer");
  }
  if (ball.radius_exponent <= 0) return Integer(0);
  Integer modulus = integer_power(ball.prime.value(), static_cast<unsigned long>(ball.radius_exponent));
  return residue_mod(ball.center, ball.prime, modulus);
}

Integer crt_solve(std::span<const Congruence> congruences) {
  Integer x = 0;
  Integer m = 1;
  for (const Congruence& c : congruences) {
    if (c.modulus <= 0) fail(ErrorCode::InvalidArgument, "modulus must be positive");
    Integer g = gcd(m, c.modulus);
    if (g != 1) {
      fail(ErrorCode::NonCoprimeModuli,
           "modulus " + c.modulus.get_str() + " shares a factor with an earlier modulus");
    }
    if (c.modulus == 1) continue;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
    Integer t = Integer((c.residue - x) * inv) % c.modulus;
    if (t < 0) t += c.modulus;
    x += m * t;
    m *= c.modulus;
  }
  x %= m;
  if (x < 0) x += m;
  return x;
}

}  // namespace adelic

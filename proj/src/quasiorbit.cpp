#include "adelic/quasiorbit.hpp"

#include <algorithm>
#include <stdexcept>

#include "adelic/error.hpp"

namespace adelic {

IsotropyTag isotropy(const FiniteAdele& a) {
  return a.is_zero() ? IsotropyTag::FullGroup : IsotropyTag::Trivial;
}

IsotropyTag isotropy(const FullAdele& a) {
  return a.is_zero() ? IsotropyTag::FullGroup : IsotropyTag::Trivial;
}

ParameterPoint::ParameterPoint(PrimeSet zeros) : value_(zeros.with_base(PrimeBase::Extended)) {}

ParameterPoint chi(const FullAdele& a) {
  if (is_invertible(a)) return ParameterPoint(factor_idele(a).u);
  return ParameterPoint(zero_set(a));
}

namespace {

// Some prime at which a does not vanish; a must be nonzero.
Prime nonvanishing_prime(const FiniteAdele& a) {
  for (const auto& [p, x] : a.explicit_components()) {
    if (x != 0) return p;
  }
  return a.first_default_prime();
}

std::optional<Rational> ratio_if_orbit(const FiniteAdele& a, const FiniteAdele& b, bool positive_only) {
  Prime p = nonvanishing_prime(a);
  Rational r = b.component(p) / a.component(p);
  if (r == 0 || (positive_only && r < 0)) return std::nullopt;
  if (scale(r, a) != b) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> exact_orbit_witness(const FiniteAdele& a, const FiniteAdele& b) {
  if (a.is_zero()) return b.is_zero() ? std::optional<Rational>(1) : std::nullopt;
  return ratio_if_orbit(a, b, true);
}

std::optional<Rational> exact_orbit_witness(const FullAdele& a, const FullAdele& b) {
  if (a.is_zero()) return b.is_zero() ? std::optional<Rational>(1) : std::nullopt;
  if (a.real_part() != 0) {
    Rational r = b.real_part() / a.real_part();
    if (r == 0 || scale(r, a.finite_part()) != b.finite_part()) return std::nullopt;
    return r;
  }
  if (b.real_part() != 0) return std::nullopt;
  return ratio_if_orbit(a.finite_part(), b.finite_part(), false);
}

bool orbit_closure_contains(const FiniteAdele& a, const FiniteAdele& b) {
  return zero_set(a).is_subset_of(zero_set(b));
}

bool orbit_closure_contains(const FullAdele& a, const FullAdele& b) {
  if (is_invertible(a)) return exact_orbit_witness(a, b).has_value();
  return zero_set(a).is_subset_of(zero_set(b));
}

bool same_quasi_orbit(const FiniteAdele& a, const FiniteAdele& b) {
  return orbit_closure_contains(a, b) && orbit_closure_contains(b, a);
}

bool same_quasi_orbit(const FullAdele& a, const FullAdele& b) {
  return orbit_closure_contains(a, b) && orbit_closure_contains(b, a);
}

bool is_zero_divisor(const FiniteAdele& a) {
  bool vanishes = a.default_rule().kind == DefaultKind::Zero;
  for (const auto& [p, x] : a.explicit_components()) {
    if (x == 0) {
      vanishes = true;
    } else if (valuation(x, p) < Valuation(0)) {
      fail(ErrorCode::NotIntegral, "component at " + std::to_string(p.value()) + " is not integral");
    }
  }
  return vanishes;
}

Neighbourhood canonical_neighbourhood(const FiniteAdele& b, const std::map<Prime, long>& radii) {
  std::vector<PadicBall> balls;
  for (const auto& [p, l] : radii) balls.push_back(PadicBall{p, b.component(p), l});
  for (const auto& [p, x] : b.explicit_components()) {
    if (!radii.contains(p) && valuation(x, p) < Valuation(0)) balls.push_back(PadicBall{p, x, 0});
  }
  return Neighbourhood(std::move(balls), std::nullopt);
}

Neighbourhood canonical_neighbourhood(const FullAdele& b, const std::map<Prime, long>& radii,
                                      const Rational& width) {
  if (width <= 0) fail(ErrorCode::InvalidArgument, "interval width must be positive");
  Neighbourhood finite = canonical_neighbourhood(b.finite_part(), radii);
  std::vector<PadicBall> balls;
  for (const auto& [p, ball] : finite.balls()) balls.push_back(ball);
  Rational half = width / 2;
  return Neighbourhood(std::move(balls),
                       RealInterval{b.real_part() - half, b.real_part() + half});
}

namespace {

// Floor division for rationals.
Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// mu = prod p^{e_p} over the ball primes, with e_p just large enough that
// mu * V_p lies in Z_p.
Rational rescaling(const Neighbourhood& v) {
  Rational mu = 1;
  for (const auto& [p, ball] : v.balls()) {
    long e = std::max(0L, -ball.radius_exponent);
    Valuation vc = valuation(ball.center, p);
    if (!vc.is_infinite()) e = std::max(e, -vc.value());
    mu *= prime_power(p.value(), e);
  }
  return mu;
}

// The CRT construction behind the orbit-closure lemmas.
//
// The adele is first made integral (a' = lambda * a) and the neighbourhood is
// rescaled (V' = mu * V) until every ball sits inside Z_p; a witness r'' for
// (a', V') gives r = r'' * lambda / mu for (a, V). At each constrained prime
// with a'_p = p^{v_p} u_p != 0 the integer k_p lies in u_p^{-1} V'_p and
// l_p = max(1, radius + v_p). With D = den * prod p^{v_p}, every n solving
//   n = k_p * den * prod_{q != p} q^{v_q}   (mod p^{l_p})
// makes r'' = n / D land in the p-adic balls and be integral at every prime
// outside the balls and the extra denominator `den`.
class WitnessBuilder {
 public:
  WitnessBuilder(const FiniteAdele& a, const Neighbourhood& v) {
    for (const auto& [p, ball] : v.balls()) {
      Rational ap = a.component(p);
      if (ap == 0 && !ball_contains(ball, Rational(0))) {
        fail(ErrorCode::Infeasible, "a vanishes at " + std::to_string(p.value()) +
                                        " but the ball there excludes 0");
      }
    }

    lambda_ = 1;
    for (const auto& [p, x] : a.explicit_components()) {
      if (x != 0 && valuation(x, p) < Valuation(0)) {
        lambda_ *= prime_power(p.value(), -valuation(x, p).value());
      }
    }

    mu_ = rescaling(v);
    for (const auto& [p, ball] : v.balls()) {
      Rational center = ball.center * mu_;
      long radius = ball.radius_exponent + valuation(mu_, p).value();

      Rational ap = a.component(p) * lambda_;
      if (ap == 0) continue;
      long vp = valuation(ap, p).value();
      Rational unit = ap * prime_power(p.value(), -vp);
      Constraint c{p, vp, integer_in_ball(PadicBall{p, center / unit, radius}),
                   std::max(1L, radius + vp)};
      constraints_.push_back(c);
    }

    modulus_ = 1;
    base_denominator_ = 1;
    for (const Constraint& c : constraints_) {
      modulus_ *= integer_power(c.prime.value(), static_cast<unsigned long>(c.exponent));
      base_denominator_ *= integer_power(c.prime.value(), static_cast<unsigned long>(c.valuation));
    }
  }

  const Integer& modulus() const { return modulus_; }
  const Integer& base_denominator() const { return base_denominator_; }
  const Rational& lambda() const { return lambda_; }
  const Rational& mu() const { return mu_; }

  /// Least nonnegative solution of the congruences for the given extra denominator.
  Integer solve(const Integer& den) const {
    std::vector<Congruence> system;
    for (const Constraint& c : constraints_) {
      Integer pk = integer_power(c.prime.value(), static_cast<unsigned long>(c.exponent));
      Integer rhs = c.k * den;
      for (const Constraint& other : constraints_) {
        if (other.prime != c.prime) {
          rhs *= integer_power(other.prime.value(), static_cast<unsigned long>(other.valuation));
        }
      }
      system.push_back(Congruence{Integer(rhs % pk), pk});
    }
    return crt_solve(system);
  }

  Rational to_witness(const Integer& n, const Integer& den) const {
    return Rational(n) / Rational(Integer(den * base_denominator_)) * lambda_ / mu_;
  }

 private:
  struct Constraint {
    Prime prime;
    long valuation;
    Integer k;
    long exponent;
  };

  Rational lambda_;
  Rational mu_;
  std::vector<Constraint> constraints_;
  Integer modulus_;
  Integer base_denominator_;
};

Integer first_positive(const Integer& n0, const Integer& modulus) {
  return n0 > 0 ? n0 : Integer(n0 + modulus);
}

// Ascending scan of n0 + N*Z for a nonzero n with lo < n < hi.
std::optional<Integer> scan_progression(const Integer& n0, const Integer& modulus,
                                        const Rational& lo, const Rational& hi,
                                        const WitnessOptions& opts) {
  Integer n = n0 + modulus * (floor_of((lo - Rational(n0)) / Rational(modulus)) + 1);
  for (std::size_t step = 0; Rational(n) < hi; ++step, n += modulus) {
    if (step >= opts.scan_cap) {
      fail(ErrorCode::SearchBoundExceeded, "progression scan exceeded its cap");
    }
    if (n != 0) return n;
  }
  return std::nullopt;
}

// n-range (lo, hi) for which n * slope lies inside the interval.
std::pair<Rational, Rational> preimage(const RealInterval& interval, const Rational& slope) {
  Rational lo = interval.lower / slope;
  Rational hi = interval.upper / slope;
  if (slope < 0) std::swap(lo, hi);
  return {lo, hi};
}

Rational verified(const Rational& r, const FiniteAdele& a, const Neighbourhood& v) {
  if (!v.contains(scale(r, a))) throw std::logic_error("witness failed exact verification");
  return r;
}

Rational verified(const Rational& r, const FullAdele& a, const Neighbourhood& v) {
  if (!v.contains(scale(r, a))) throw std::logic_error("witness failed exact verification");
  return r;
}

// Smallest vanishing finite prime of a, if any.
std::optional<Prime> smallest_zero(const FiniteAdele& a) {
  std::optional<Prime> best;
  for (const auto& [p, x] : a.explicit_components()) {
    if (x == 0) {
      best = p;
      break;
    }
  }
  if (a.default_rule().kind == DefaultKind::Zero) {
    Prime d = a.first_default_prime();
    if (!best || d < *best) best = d;
  }
  return best;
}

// Default primes that divide a, in increasing order, skipping the given primes.
// Only TIMES_P defaults make every default prime divide a.
class DividingDefaultPrimes {
 public:
  DividingDefaultPrimes(const FiniteAdele& a, const Neighbourhood& v) : a_(a), v_(v) {
    if (a.default_rule().kind != DefaultKind::TimesP) {
      throw std::logic_error("no infinite family of default primes divides this adele");
    }
  }

  Prime next() {
    Prime p = a_.first_default_prime(cursor_);
    while (v_.balls().contains(p)) p = a_.first_default_prime(p.value() + 1);
    cursor_ = p.value() + 1;
    return p;
  }

 private:
  const FiniteAdele& a_;
  const Neighbourhood& v_;
  std::uint64_t cursor_ = 2;
};

// Exact search inside the closed orbit Q^* a = Q^* u of an invertible adele.
// After rescaling V by mu so each ball lies in Z_p, s * u is in mu V exactly
// when s is an integer with s = k_p (mod p^{radius}) at every ball prime and
// s * u_inf in the rescaled interval.
Rational closed_orbit_witness(const FullAdele& a, const Neighbourhood& v, const WitnessOptions& opts) {
  IdeleFactorization f = factor_idele(a);
  const FullAdele& u = f.u.value();
  const Rational mu = rescaling(v);
  std::vector<Congruence> system;
  for (const auto& [p, ball] : v.balls()) {
    long radius = ball.radius_exponent + valuation(mu, p).value();
    Rational center = ball.center * mu;
    Integer k = integer_in_ball(PadicBall{p, center / u.component(p), radius});
    system.push_back(Congruence{k, integer_power(p.value(), static_cast<unsigned long>(radius))});
  }
  Integer n0 = crt_solve(system);
  Integer modulus = 1;
  for (const auto& c : system) modulus *= c.modulus;

  RealInterval scaled{v.interval()->lower * mu, v.interval()->upper * mu};
  auto [lo, hi] = preimage(scaled, u.real_part());
  std::optional<Integer> n = scan_progression(n0, modulus, lo, hi, opts);
  if (!n) fail(ErrorCode::ClosedOrbitMiss, "the closed orbit of an invertible adele misses V");
  return Rational(*n) / (mu * f.r);
}

}  // namespace

Rational approx_witness(const FiniteAdele& a, const Neighbourhood& v, const WitnessOptions&) {
  if (v.interval()) fail(ErrorCode::InvalidArgument, "finite-adele neighbourhoods carry no interval");
  if (a.is_zero()) {
    if (v.contains(a)) return Rational(1);
    fail(ErrorCode::Infeasible, "the zero orbit is {0} and V excludes 0");
  }
  WitnessBuilder builder(a, v);
  Integer n = first_positive(builder.solve(1), builder.modulus());
  return verified(builder.to_witness(n, 1), a, v);
}

Rational approx_witness(const FullAdele& a, const Neighbourhood& v, const WitnessOptions& opts) {
  if (!v.interval()) fail(ErrorCode::InvalidArgument, "full-adele neighbourhoods need an interval");
  const RealInterval& interval = *v.interval();
  if (a.is_zero()) {
    if (v.contains(a)) return Rational(1);
    fail(ErrorCode::Infeasible, "the zero orbit is {0} and V excludes 0");
  }
  if (is_invertible(a)) return verified(closed_orbit_witness(a, v, opts), a, v);

  const FiniteAdele& fa = a.finite_part();
  WitnessBuilder builder(fa, v);

  if (a.real_part() == 0) {
    // Every multiple keeps a vanishing real part; the finite construction suffices.
    if (!interval.contains(0)) {
      fail(ErrorCode::Infeasible, "a vanishes at infinity but the interval excludes 0");
    }
    Integer n = first_positive(builder.solve(1), builder.modulus());
    return verified(builder.to_witness(n, 1), a, v);
  }

  // Denominator growth must make the progression step N |a'_inf| / D smaller
  // than the rescaled interval length mu (y - x).
  const Rational scaled_real = a.real_part() * builder.lambda();
  const Rational length = (interval.upper - interval.lower) * builder.mu();
  const RealInterval target{interval.lower * builder.mu(), interval.upper * builder.mu()};
  auto step = [&](const Integer& den) -> Rational {
    return Rational(builder.modulus()) * abs(scaled_real) /
           Rational(Integer(den * builder.base_denominator()));
  };
  auto attempt = [&](const Integer& den) -> std::optional<Rational> {
    Integer n0 = builder.solve(den);
    Rational slope = scaled_real / Rational(Integer(den * builder.base_denominator()));
    auto [lo, hi] = preimage(target, slope);
    std::optional<Integer> n = scan_progression(n0, builder.modulus(), lo, hi, opts);
    if (!n) return std::nullopt;
    return builder.to_witness(*n, den);
  };

  if (std::optional<Prime> q = smallest_zero(fa)) {
    // Case I: powers of a vanishing prime Q are free denominators.
    Integer den = 1;
    Integer qz = q->as_integer();
    for (std::size_t m = 0; m <= opts.growth_cap; ++m, den *= qz) {
      if (step(den) >= length) continue;
      if (auto r = attempt(den)) return verified(*r, a, v);
    }
    fail(ErrorCode::SearchBoundExceeded, "no admissible power of Q within the growth cap");
  }

  // Case II: infinitely many default primes divide a; each may appear once in
  // the denominator.
  DividingDefaultPrimes primes(fa, v);
  Integer den = 1;
  for (std::size_t taken = 0; taken <= opts.growth_cap; ++taken) {
    if (step(den) < length) {
      if (auto r = attempt(den)) return verified(*r, a, v);
    }
    den *= primes.next().as_integer();
  }
  fail(ErrorCode::SearchBoundExceeded, "no admissible set G within the growth cap");
}

}  // namespace adelic

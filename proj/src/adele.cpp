#include "adelic/adele.hpp"

#include <algorithm>
#include <tuple>

#include "adelic/error.hpp"

namespace adelic {

Rational DefaultSpec::at(const Prime& p) const {
  switch (kind) {
    case DefaultKind::Zero: return Rational(0);
    case DefaultKind::Rational: return q;
    case DefaultKind::TimesP: return q * Rational(p.as_integer());
  }
  return Rational(0);
}

DefaultSpec DefaultSpec::scaled(const Rational& r) const {
  if (kind == DefaultKind::Zero) return zero();
  return DefaultSpec{kind, q * r};
}

FiniteAdele::FiniteAdele(ComponentMap explicit_components, DefaultSpec default_rule)
    : explicit_(std::move(explicit_components)), default_(std::move(default_rule)) {
  if (default_.kind == DefaultKind::Zero) {
    default_.q = 0;
    return;
  }
  if (default_.q == 0) {
    fail(ErrorCode::InvalidArgument, "a rational or times_p default needs a nonzero q");
  }
  // Strip every explicit prime from q; anything left is a prime that would
  // give the default component a nonzero valuation.
  Integer num = abs(default_.q.get_num());
  Integer den = default_.q.get_den();
  for (const auto& [p, value] : explicit_) {
    Integer pz = p.as_integer();
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  }
  if (num != 1 || den != 1) {
    fail(ErrorCode::InvalidArgument, "default q = " + format_rational(default_.q) +
                                         " has a prime factor missing from the explicit map");
  }
}

Rational FiniteAdele::component(const Prime& p) const {
  auto it = explicit_.find(p);
  return it != explicit_.end() ? it->second : default_.at(p);
}

bool FiniteAdele::is_zero() const {
  return default_.kind == DefaultKind::Zero &&
         std::all_of(explicit_.begin(), explicit_.end(), [](const auto& e) { return e.second == 0; });
}

Prime FiniteAdele::first_default_prime(std::uint64_t from) const {
  Prime p = from <= 2 ? Prime(2) : next_prime(from - 1);
  while (explicit_.contains(p)) p = next_prime(p.value());
  return p;
}

FiniteAdele FiniteAdele::canonical() const {
  ComponentMap kept;
  for (const auto& [p, value] : explicit_) {
    bool divides_q = default_.kind != DefaultKind::Zero && valuation(default_.q, p) != Valuation(0);
    if (divides_q || value != default_.at(p)) kept.emplace(p, value);
  }
  return FiniteAdele(std::move(kept), default_);
}

bool FiniteAdele::operator==(const FiniteAdele& other) const {
  FiniteAdele lhs = canonical();
  FiniteAdele rhs = other.canonical();
  return lhs.default_ == rhs.default_ && lhs.explicit_ == rhs.explicit_;
}

UnitIdele::UnitIdele(FullAdele value) : value_(std::move(value)) {
  const FiniteAdele& f = value_.finite_part();
  if (f.default_rule().kind != DefaultKind::Rational) {
    fail(ErrorCode::InvalidArgument, "a unit idele needs a rational default");
  }
  if (value_.real_part() <= 0) {
    fail(ErrorCode::InvalidArgument, "a unit idele needs a positive real part");
  }
  for (const auto& [p, x] : f.explicit_components()) {
    if (valuation(x, p) != Valuation(0)) {
      fail(ErrorCode::InvalidArgument,
           "component at " + std::to_string(p.value()) + " is not a p-adic unit");
    }
  }
}

UnitIdele UnitIdele::one() {
  return UnitIdele(FullAdele(FiniteAdele({}, DefaultSpec::rational(1)), 1));
}

bool unit_less(const UnitIdele& a, const UnitIdele& b) {
  const FullAdele ca = a.value().canonical();
  const FullAdele cb = b.value().canonical();
  const auto& ma = ca.finite_part().explicit_components();
  const auto& mb = cb.finite_part().explicit_components();
  auto key = [](const FullAdele& x) {
    return std::make_tuple(x.finite_part().default_rule().q, x.real_part());
  };
  if (key(ca) != key(cb)) return key(ca) < key(cb);
  return std::lexicographical_compare(
      ma.begin(), ma.end(), mb.begin(), mb.end(), [](const auto& l, const auto& r) {
        return l.first != r.first ? l.first < r.first : l.second < r.second;
      });
}

Neighbourhood::Neighbourhood(std::vector<PadicBall> balls, std::optional<RealInterval> interval)
    : interval_(std::move(interval)) {
  for (auto& ball : balls) {
    Prime p = ball.prime;
    if (!balls_.emplace(p, std::move(ball)).second) {
      fail(ErrorCode::InvalidArgument, "two balls at the prime " + std::to_string(p.value()));
    }
  }
  if (interval_ && !(interval_->lower < interval_->upper)) {
    fail(ErrorCode::InvalidArgument, "empty real interval");
  }
}

namespace {

bool finite_part_in(const std::map<Prime, PadicBall>& balls, const FiniteAdele& a) {
  for (const auto& [p, ball] : balls) {
    if (!ball_contains(ball, a.component(p))) return false;
  }
  // Default components are integral by construction, so only explicit primes
  // outside the balls can break integrality.
  for (const auto& [p, x] : a.explicit_components()) {
    if (!balls.contains(p) && valuation(x, p) < Valuation(0)) return false;
  }
  return true;
}

}  // namespace

bool Neighbourhood::contains(const FiniteAdele& a) const {
  if (interval_) fail(ErrorCode::InvalidArgument, "finite-adele neighbourhoods carry no interval");
  return finite_part_in(balls_, a);
}

bool Neighbourhood::contains(const FullAdele& a) const {
  if (!interval_) fail(ErrorCode::InvalidArgument, "full-adele neighbourhoods need an interval");
  return interval_->contains(a.real_part()) && finite_part_in(balls_, a.finite_part());
}

FiniteAdele embed_finite(const Rational& q) {
  if (q == 0) return FiniteAdele::zero();
  FiniteAdele::ComponentMap m;
  for (const Prime& p : prime_support(q)) m.emplace(p, q);
  return FiniteAdele(std::move(m), DefaultSpec::rational(q));
}

FullAdele embed_full(const Rational& q) { return FullAdele(embed_finite(q), q); }

Adele embed_rational(const Rational& q, AdeleKind kind) {
  if (kind == AdeleKind::Finite) return embed_finite(q);
  return embed_full(q);
}

FiniteAdele scale(const Rational& r, const FiniteAdele& a) {
  if (r == 0) fail(ErrorCode::InvalidArgument, "scaling factor must be nonzero");
  FiniteAdele::ComponentMap m;
  for (const auto& [p, x] : a.explicit_components()) m.emplace(p, x * r);
  for (const Prime& p : prime_support(r)) {
    if (!m.contains(p)) m.emplace(p, a.default_rule().at(p) * r);
  }
  return FiniteAdele(std::move(m), a.default_rule().scaled(r));
}

FullAdele scale(const Rational& r, const FullAdele& a) {
  return FullAdele(scale(r, a.finite_part()), a.real_part() * r);
}

ComponentValue component(const FiniteAdele& a, const ExtendedPrime& p, unsigned precision) {
  if (p.is_infinity()) {
    fail(ErrorCode::InfinityOnFiniteAdele, "a finite adele has no archimedean component");
  }
  return expand(a.component(p.prime()), p.prime(), precision);
}

ComponentValue component(const FullAdele& a, const ExtendedPrime& p, unsigned precision) {
  if (p.is_infinity()) return a.real_part();
  return expand(a.component(p.prime()), p.prime(), precision);
}

namespace {

PrimeSet zero_set_with(const FiniteAdele& a, PrimeBase base, bool real_vanishes) {
  PrimeSet::Members zeros;
  PrimeSet::Members nonzeros;
  for (const auto& [p, x] : a.explicit_components()) (x == 0 ? zeros : nonzeros).insert(p);
  if (a.default_rule().kind == DefaultKind::Zero) {
    if (base == PrimeBase::Extended && !real_vanishes) nonzeros.insert(ExtendedPrime::infinity());
    return PrimeSet::cofinite(base, std::move(nonzeros));
  }
  if (real_vanishes) zeros.insert(ExtendedPrime::infinity());
  return PrimeSet::finite(base, std::move(zeros));
}

}  // namespace

PrimeSet zero_set(const FiniteAdele& a) { return zero_set_with(a, PrimeBase::Finite, false); }

PrimeSet zero_set(const FullAdele& a) {
  return zero_set_with(a.finite_part(), PrimeBase::Extended, a.real_part() == 0);
}

bool is_invertible(const FullAdele& a) {
  const FiniteAdele& f = a.finite_part();
  return a.real_part() != 0 && f.default_rule().kind == DefaultKind::Rational &&
         std::all_of(f.explicit_components().begin(), f.explicit_components().end(),
                     [](const auto& e) { return e.second != 0; });
}

Rational absolute_value(const FullAdele& a) {
  if (!is_invertible(a)) return Rational(0);
  Rational result = abs(a.real_part());
  for (const auto& [p, x] : a.finite_part().explicit_components()) {
    result *= prime_power(p.value(), -valuation(x, p).value());
  }
  return result;
}

Rational xi_partial(const FullAdele& a, const std::set<Prime>& primes) {
  if (a.real_part() == 0) fail(ErrorCode::ZeroComponent, "the real component vanishes");
  Rational result = abs(a.real_part());
  for (const Prime& p : primes) {
    Valuation v = a.valuation_at(p);
    if (v.is_infinite()) {
      fail(ErrorCode::ZeroComponent, "the component at " + std::to_string(p.value()) + " vanishes");
    }
    result *= prime_power(p.value(), -v.value());
  }
  return result;
}

IdeleFactorization factor_idele(const FullAdele& a) {
  if (!is_invertible(a)) fail(ErrorCode::NotInvertible, "adele is not invertible");
  // Default primes carry units, so only explicit primes contribute to r.
  Rational r = sign(a.real_part());
  for (const auto& [p, x] : a.finite_part().explicit_components()) {
    r *= prime_power(p.value(), valuation(x, p).value());
  }
  return IdeleFactorization{r, UnitIdele(scale(1 / r, a))};
}

}  // namespace adelic

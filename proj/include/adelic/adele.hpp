#pragma once

// Finitely described adeles.
//
// A finite adele is an explicit map from finitely many primes to exact
// rationals plus a rule giving the component at every other ("default")
// prime. A full adele appends a rational archimedean coordinate. Components
// are exact rationals regarded as elements of Q_p, so zero sets, valuations
// and neighbourhood membership are all decidable.

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "adelic/padic.hpp"
#include "adelic/prime_set.hpp"
#include "adelic/rational.hpp"

namespace adelic {

enum class DefaultKind {
  Zero,      // component 0
  Rational,  // component q
  TimesP,    // component q * p at the prime p
};

/// Component rule at every prime outside the explicit map.
struct DefaultSpec {
  DefaultKind kind = DefaultKind::Zero;
  Rational q = 0;

  static DefaultSpec zero() { return {}; }
  static DefaultSpec rational(const Rational& q) { return {DefaultKind::Rational, q}; }
  static DefaultSpec times_p(const Rational& q) { return {DefaultKind::TimesP, q}; }

  Rational at(const Prime& p) const;
  DefaultSpec scaled(const Rational& r) const;

  bool operator==(const DefaultSpec&) const = default;
};

class FiniteAdele {
 public:
  using ComponentMap = std::map<Prime, Rational>;

  /// Throws InvalidArgument unless every prime of a nonzero default q is explicit.
  FiniteAdele(ComponentMap explicit_components, DefaultSpec default_rule);

  static FiniteAdele zero() { return FiniteAdele({}, DefaultSpec::zero()); }

  const ComponentMap& explicit_components() const noexcept { return explicit_; }
  const DefaultSpec& default_rule() const noexcept { return default_; }

  bool is_explicit(const Prime& p) const { return explicit_.contains(p); }
  Rational component(const Prime& p) const;
  Valuation valuation_at(const Prime& p) const { return valuation(component(p), p); }

  bool is_zero() const;

  /// Smallest prime outside the explicit map, i.e. the first default prime
  /// that is at least `from`.
  Prime first_default_prime(std::uint64_t from = 2) const;

  /// Same adele with explicit entries that merely restate the default removed.
  FiniteAdele canonical() const;

  /// Componentwise equality.
  bool operator==(const FiniteAdele& other) const;

 private:
  ComponentMap explicit_;
  DefaultSpec default_;
};

class FullAdele {
 public:
  FullAdele(FiniteAdele finite_part, Rational real_part)
      : finite_(std::move(finite_part)), real_(std::move(real_part)) {}

  static FullAdele zero() { return FullAdele(FiniteAdele::zero(), 0); }

  const FiniteAdele& finite_part() const noexcept { return finite_; }
  const Rational& real_part() const noexcept { return real_; }

  Rational component(const Prime& p) const { return finite_.component(p); }
  Valuation valuation_at(const Prime& p) const { return finite_.valuation_at(p); }
  bool is_zero() const { return finite_.is_zero() && real_ == 0; }

  FullAdele canonical() const { return FullAdele(finite_.canonical(), real_); }

  bool operator==(const FullAdele& other) const {
    return real_ == other.real_ && finite_ == other.finite_;
  }

 private:
  FiniteAdele finite_;
  Rational real_;
};

enum class AdeleKind { Finite, Full };
using Adele = std::variant<FiniteAdele, FullAdele>;

/// Element of prod Z_p^* x R_+^*: unit at every prime, positive real part.
class UnitIdele {
 public:
  /// Throws InvalidArgument if `value` is not a unit idele.
  explicit UnitIdele(FullAdele value);

  static UnitIdele one();

  const FullAdele& value() const noexcept { return value_; }
  const Rational& real_part() const noexcept { return value_.real_part(); }

  bool operator==(const UnitIdele& other) const { return value_ == other.value_; }

 private:
  FullAdele value_;
};

/// Total order on unit ideles via their canonical forms; used to sort point lists.
bool unit_less(const UnitIdele& a, const UnitIdele& b);

/// Open interval (lower, upper) with rational endpoints.
struct RealInterval {
  Rational lower;
  Rational upper;

  bool contains(const Rational& x) const { return lower < x && x < upper; }
};

/// Basic open set: balls at finitely many primes, Z_p elsewhere, and an open
/// interval at infinity for full adeles.
class Neighbourhood {
 public:
  Neighbourhood(std::vector<PadicBall> balls, std::optional<RealInterval> interval);

  const std::map<Prime, PadicBall>& balls() const noexcept { return balls_; }
  const std::optional<RealInterval>& interval() const noexcept { return interval_; }

  /// Throws InvalidArgument when an interval is given for a finite adele.
  bool contains(const FiniteAdele& a) const;
  /// Throws InvalidArgument when the interval is missing.
  bool contains(const FullAdele& a) const;

 private:
  std::map<Prime, PadicBall> balls_;
  std::optional<RealInterval> interval_;
};

FiniteAdele embed_finite(const Rational& q);
FullAdele embed_full(const Rational& q);
Adele embed_rational(const Rational& q, AdeleKind kind);

/// Multiplication by a nonzero rational, componentwise.
FiniteAdele scale(const Rational& r, const FiniteAdele& a);
FullAdele scale(const Rational& r, const FullAdele& a);

using ComponentValue = std::variant<TruncatedPadic, Rational>;

/// Throws InfinityOnFiniteAdele when asked for the archimedean component.
ComponentValue component(const FiniteAdele& a, const ExtendedPrime& p, unsigned precision);
ComponentValue component(const FullAdele& a, const ExtendedPrime& p, unsigned precision);

PrimeSet zero_set(const FiniteAdele& a);
PrimeSet zero_set(const FullAdele& a);

bool is_invertible(const FullAdele& a);

/// |a_inf| * prod_p p^{-v_p(a)}; zero exactly for noninvertible adeles.
Rational absolute_value(const FullAdele& a);

/// Partial product |a_inf| * prod_{p in primes} p^{-v_p(a)}.
Rational xi_partial(const FullAdele& a, const std::set<Prime>& primes);

struct IdeleFactorization {
  Rational r;
  UnitIdele u;
};

/// The unique a = r * u with r rational and u a unit idele.
IdeleFactorization factor_idele(const FullAdele& a);

}  // namespace adelic

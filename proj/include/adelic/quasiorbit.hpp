#pragma once

// The multiplicative action of Q^* (full adeles) and Q^*_+ (finite adeles):
// isotropy, orbit closures, quasi-orbits, the parametrization chi, and
// constructive witnesses that an orbit meets a given basic open set.
//
// Orbits under division coincide with orbits under multiplication, so every
// routine here works with r * a. The CLI offers a flag that reports 1/r.

#include <cstddef>
#include <optional>
#include <variant>

#include "adelic/adele.hpp"

namespace adelic {

enum class IsotropyTag { Trivial, FullGroup };

IsotropyTag isotropy(const FiniteAdele& a);
IsotropyTag isotropy(const FullAdele& a);

/// Is b in the closure of the orbit of a?
bool orbit_closure_contains(const FiniteAdele& a, const FiniteAdele& b);
bool orbit_closure_contains(const FullAdele& a, const FullAdele& b);

bool same_quasi_orbit(const FiniteAdele& a, const FiniteAdele& b);
bool same_quasi_orbit(const FullAdele& a, const FullAdele& b);

/// A point of 2^P-bar disjoint-union U: the zero set of a noninvertible
/// class, or the unique unit representative of an invertible orbit.
class ParameterPoint {
 public:
  explicit ParameterPoint(PrimeSet zeros);
  explicit ParameterPoint(UnitIdele unit) : value_(std::move(unit)) {}

  bool is_prime_set() const noexcept { return std::holds_alternative<PrimeSet>(value_); }
  const PrimeSet& prime_set() const { return std::get<PrimeSet>(value_); }
  const UnitIdele& unit() const { return std::get<UnitIdele>(value_); }

  bool operator==(const ParameterPoint& other) const = default;

 private:
  std::variant<PrimeSet, UnitIdele> value_;
};

ParameterPoint chi(const FullAdele& a);

/// The unique r with r * a == b (any r when a == b == 0 yields 1), or nothing.
/// For finite adeles r must be positive.
std::optional<Rational> exact_orbit_witness(const FiniteAdele& a, const FiniteAdele& b);
std::optional<Rational> exact_orbit_witness(const FullAdele& a, const FullAdele& b);

struct WitnessOptions {
  /// Candidates examined when scanning a solution progression for one that
  /// lands in the real interval. The first candidate already lands there
  /// whenever the progression step is below the interval length, so the cap
  /// is only reached on inputs that violate that bound.
  std::size_t scan_cap = 1u << 16;
  /// Bound on Q-exponent growth (Case I) and on the number of default primes
  /// taken into the denominator (Case II).
  std::size_t growth_cap = 4096;
};

/// A nonzero rational r with r * a in V, built by the CRT construction of the
/// orbit-closure lemmas and verified exactly before it is returned.
///
/// Errors: Infeasible when a's zero pattern (or vanishing real part) keeps the
/// orbit out of V; ClosedOrbitMiss when a is an invertible full adele whose
/// closed orbit misses V; SearchBoundExceeded when an option cap is hit.
Rational approx_witness(const FiniteAdele& a, const Neighbourhood& v, const WitnessOptions& opts = {});
Rational approx_witness(const FullAdele& a, const Neighbourhood& v, const WitnessOptions& opts = {});

/// Integral a is a zero divisor of prod Z_p iff some component vanishes.
/// Throws NotIntegral when a has a negative valuation somewhere.
bool is_zero_divisor(const FiniteAdele& a);

/// Ball centred at b_p of radius exponent l at each given prime, the ball
/// b_p + Z_p at every other prime where b is not integral, and the interval
/// (b_inf - w/2, b_inf + w/2) for full adeles. Always contains b.
Neighbourhood canonical_neighbourhood(const FiniteAdele& b, const std::map<Prime, long>& radii);
Neighbourhood canonical_neighbourhood(const FullAdele& b, const std::map<Prime, long>& radii,
                                      const Rational& width);

}  // namespace adelic

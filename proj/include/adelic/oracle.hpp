#pragma once

// Brute-force cross-checks for the constructive algorithms: a bounded
// enumeration of rationals for orbit approximation, and the power-cofinite
// closure recomputed by enumeration on a finite window of primes.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "adelic/adele.hpp"
#include "adelic/prime_set.hpp"

namespace adelic {

struct SearchBudget {
  /// Largest max(|numerator|, denominator) examined. At most 10^7.
  std::uint64_t height_bound = 100;
  /// Primes allowed in denominators, on top of the primes where a vanishes or
  /// has positive valuation.
  std::set<Prime> prime_window;
  /// Largest ball radius callers should build neighbourhoods with; the search
  /// itself accepts any radius.
  unsigned precision = 3;
};

/// First r = n/d (gcd 1, d > 0) in order of increasing height and then
/// increasing numerator with r * a in V. Finite adeles only try r > 0.
/// The result is verified exactly before it is returned.
std::optional<Rational> witness_by_search(const FiniteAdele& a, const Neighbourhood& v,
                                          const SearchBudget& budget);
std::optional<Rational> witness_by_search(const FullAdele& a, const Neighbourhood& v,
                                          const SearchBudget& budget);
std::optional<Rational> witness_by_search(const Adele& a, const Neighbourhood& v, const SearchBudget& budget);

/// Subsets T of the window lying in the closure of the points (each cut down
/// to the window), where the only opens are U_G with G inside the window.
/// Sorted, as finite prime sets over the base of the points.
std::vector<PrimeSet> window_closure(const std::vector<PrimeSet>& points, const std::set<ExtendedPrime>& window);

}  // namespace adelic

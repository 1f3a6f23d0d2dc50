#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "adelic/error.hpp"
#include "adelic/oracle.hpp"
#include "adelic/primtop.hpp"
#include "generators.hpp"

using namespace adelic;
using adelic::testing::Gen;
using adelic::testing::kSmallPrimes;

namespace {

// Every n/d of height <= h in search order, tested with the exact predicate.
template <class A>
std::optional<Rational> naive_search(const A& a, const Neighbourhood& v, const SearchBudget& budget,
                                     bool positive_only) {
  const long h = static_cast<long>(budget.height_bound);
  auto allowed = [&](long d) {
    for (long q = 2; q <= d; ++q) {
      if (d % q != 0 || !is_prime(static_cast<std::uint64_t>(q))) continue;
      Prime p(static_cast<std::uint64_t>(q));
      Rational aq = [&] {
        if constexpr (std::is_same_v<A, FullAdele>) return a.component(p);
        else return a.component(p);
      }();
      if (!budget.prime_window.contains(p) && !(valuation(aq, p) > Valuation(0))) return false;
    }
    return true;
  };
  for (long height = 1; height <= h; ++height) {
    for (long n = -height; n <= height; ++n) {
      if (n == 0 || (positive_only && n < 0)) continue;
      for (long d = 1; d <= height; ++d) {
        if (std::max(std::abs(n), d) != height || std::gcd(n, d) != 1 || !allowed(d)) continue;
        Rational r = make_rational(n, d);
        if (v.contains(scale(r, a))) return r;
      }
    }
  }
  return std::nullopt;
}

SearchBudget budget(std::uint64_t h, std::set<Prime> window) { return SearchBudget{h, std::move(window), 3}; }

}  // namespace

TEST_CASE("witness_by_search examples") {
  FiniteAdele one = embed_finite(1);
  Neighbourhood v({PadicBall{Prime(2), 0, 3}, PadicBall{Prime(3), 1, 1}}, std::nullopt);
  std::optional<Rational> r = witness_by_search(one, v, budget(100, {Prime(2), Prime(3)}));
  REQUIRE(r);
  CHECK(v.contains(scale(*r, one)));
  CHECK(*r == 16);  // 1..15 all miss: 8 = 2 mod 3, 16 = 1 mod 3

  FullAdele x = embed_full(make_rational(3, 2));
  Neighbourhood own({PadicBall{Prime(2), make_rational(3, 2), 2}}, RealInterval{1, 2});
  CHECK(witness_by_search(x, own, budget(1, {})) == Rational(1));

  FiniteAdele z({{Prime(2), 0}}, DefaultSpec::rational(1));
  Neighbourhood away({PadicBall{Prime(2), 1, 1}}, std::nullopt);
  CHECK_FALSE(witness_by_search(z, away, budget(200, {Prime(2), Prime(3)})));
}

TEST_CASE("the Case I example is found by the search") {
  FullAdele a(FiniteAdele({{Prime(2), 0}}, DefaultSpec::rational(1)), 1);
  Neighbourhood w({PadicBall{Prime(3), 2, 1}}, RealInterval{5, 6});
  std::optional<Rational> r = witness_by_search(a, w, budget(200, {Prime(3)}));
  REQUIRE(r);
  CHECK(w.contains(scale(*r, a)));
}

TEST_CASE("search agrees with naive enumeration") {
  Gen g(31);
  for (int i = 0; i < 150; ++i) {
    const bool full = g.chance(0.5);
    std::set<Prime> window;
    for (auto p : g.subset({2, 3, 5, 7}, 0.6)) window.insert(Prime(p));
    SearchBudget b = budget(static_cast<std::uint64_t>(g.uniform(1, 25)), window);
    if (full) {
      FullAdele a = g.chance(0.3) ? g.invertible(12) : g.full_adele(0.3, 12);
      FullAdele t = g.full_adele(0.3, 12);
      Neighbourhood v = canonical_neighbourhood(t, g.radii({2, 3, 5, 7}, -1, 2), make_rational(g.uniform(1, 8), 2));
      CHECK(witness_by_search(a, v, b) == naive_search(a, v, b, false));
    } else {
      FiniteAdele a = g.finite_adele(0.3, 12);
      FiniteAdele t = g.finite_adele(0.3, 12);
      Neighbourhood v = canonical_neighbourhood(t, g.radii({2, 3, 5, 7}, -1, 2));
      CHECK(witness_by_search(a, v, b) == naive_search(a, v, b, true));
    }
  }
}

TEST_CASE("search and construction agree on feasibility") {
  Gen g(32);
  std::set<Prime> window{Prime(2), Prime(3), Prime(5), Prime(7)};
  for (int i = 0; i < 100; ++i) {
    FiniteAdele a = g.finite_adele(0.3, 20);
    if (a.is_zero()) continue;
    FiniteAdele t = g.finite_adele(0.3, 20);
    Neighbourhood v = canonical_neighbourhood(t, g.radii({2, 3, 5, 7}, 0, 2));
    std::optional<Rational> found = witness_by_search(a, v, budget(2000, window));
    try {
      Rational r = approx_witness(a, v);
      CHECK(v.contains(scale(r, a)));
      const auto den_primes = prime_support(Rational(r.get_den()));
      const bool in_budget = height(r) <= 2000 && std::all_of(den_primes.begin(), den_primes.end(),
                                                                 [&](const Prime& p) { return window.contains(p); });
      if (in_budget) {
        REQUIRE(found);
        CHECK(height(*found) <= height(r));
      }
      if (found) CHECK(v.contains(scale(*found, a)));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Infeasible);
      CHECK_FALSE(found);
    }
  }
}

TEST_CASE("window_closure examples") {
  std::set<ExtendedPrime> w{Prime(2), Prime(3)};
  PrimeSet two = PrimeSet::finite(PrimeBase::Finite, {Prime(2)});
  std::vector<PrimeSet> c = window_closure({two}, w);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == two);
  CHECK(c[1] == PrimeSet::finite(PrimeBase::Finite, {Prime(2), Prime(3)}));

  CHECK(window_closure({}, w).empty());
  std::vector<PrimeSet> e = window_closure({PrimeSet::empty(PrimeBase::Finite)}, {Prime(2)});
  REQUIRE(e.size() == 2);
  CHECK(e[0].is_empty());
}

TEST_CASE("invalid budgets are rejected") {
  Neighbourhood v({}, std::nullopt);
  CHECK_THROWS_AS(witness_by_search(embed_finite(1), v, SearchBudget{0, {}, 1}), Error);
  CHECK_THROWS_AS(witness_by_search(embed_finite(1), v, SearchBudget{1, {}, 0}), Error);
}

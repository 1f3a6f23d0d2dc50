#include <doctest.h>

#include "adelic/error.hpp"
#include "adelic/quasiorbit.hpp"
#include "generators.hpp"

using namespace adelic;
using adelic::testing::Gen;
using adelic::testing::kSmallPrimes;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

FiniteAdele zero_at_two() { return FiniteAdele({{Prime(2), 0}}, DefaultSpec::rational(1)); }

UnitIdele three_at_two() {
  return UnitIdele(FullAdele(FiniteAdele({{Prime(2), 3}}, DefaultSpec::rational(1)), 1));
}

// b with zero_set(b) containing zero_set(a).
FiniteAdele coarser(Gen& g, const FiniteAdele& a) {
  FiniteAdele::ComponentMap m;
  for (const auto& [p, x] : a.explicit_components()) {
    m.emplace(p, x == 0 || g.chance(0.3) ? Rational(0) : g.rational(40));
  }
  if (a.default_rule().kind == DefaultKind::Zero) return FiniteAdele(std::move(m), DefaultSpec::zero());
  for (auto p : g.subset(kSmallPrimes, 0.3)) {
    if (!m.contains(Prime(p))) m.emplace(Prime(p), g.chance(0.5) ? Rational(0) : g.rational(40));
  }
  if (g.chance(0.2)) return FiniteAdele(std::move(m), DefaultSpec::zero());
  std::vector<std::uint64_t> keys;
  for (const auto& [p, x] : m) keys.push_back(p.value());
  return FiniteAdele(std::move(m), DefaultSpec::rational(g.supported(g.subset(keys, 0.5), 1)));
}

}  // namespace

TEST_CASE("isotropy") {
  CHECK(isotropy(FiniteAdele::zero()) == IsotropyTag::FullGroup);
  CHECK(isotropy(FullAdele::zero()) == IsotropyTag::FullGroup);
  CHECK(isotropy(embed_finite(1)) == IsotropyTag::Trivial);
  CHECK(isotropy(zero_at_two()) == IsotropyTag::Trivial);
  CHECK(isotropy(FullAdele(FiniteAdele::zero(), 1)) == IsotropyTag::Trivial);
}

TEST_CASE("orbit closures") {
  FiniteAdele a({{Prime(2), 0}}, DefaultSpec::rational(1));
  FiniteAdele b({{Prime(2), 0}, {Prime(3), 0}}, DefaultSpec::rational(1));
  CHECK(orbit_closure_contains(a, b));
  CHECK_FALSE(orbit_closure_contains(b, a));
  CHECK_FALSE(orbit_closure_contains(FiniteAdele::zero(), embed_finite(1)));

  FullAdele one = UnitIdele::one().value();
  CHECK(orbit_closure_contains(one, embed_full(3)));
  CHECK_FALSE(orbit_closure_contains(one, three_at_two().value()));
}

TEST_CASE("quasi-orbits") {
  FiniteAdele a({{Prime(5), 0}}, DefaultSpec::rational(1));
  FiniteAdele b({{Prime(5), 0}, {Prime(2), 7}}, DefaultSpec::rational(1));
  CHECK(same_quasi_orbit(a, b));

  Gen g(21);
  FullAdele x = g.invertible();
  CHECK(same_quasi_orbit(x, scale(make_rational(7, 3), x)));
  CHECK_FALSE(same_quasi_orbit(x, FullAdele(zero_at_two(), 1)));
}

TEST_CASE("orbit closure is a preorder and same_quasi_orbit an equivalence") {
  Gen g(22);
  for (int i = 0; i < 300; ++i) {
    FullAdele a = g.full_adele(0.3, 10);
    FullAdele b = g.chance(0.3) ? scale(g.rational(10), a) : g.full_adele(0.3, 10);
    FullAdele c = g.chance(0.3) ? scale(g.rational(10), b) : g.full_adele(0.3, 10);
    CHECK(orbit_closure_contains(a, a));
    if (orbit_closure_contains(a, b) && orbit_closure_contains(b, c)) CHECK(orbit_closure_contains(a, c));
    CHECK(same_quasi_orbit(a, b) == same_quasi_orbit(b, a));
    if (same_quasi_orbit(a, b) && same_quasi_orbit(b, c)) CHECK(same_quasi_orbit(a, c));
  }
}

TEST_CASE("chi") {
  ParameterPoint m = chi(embed_full(-2));
  REQUIRE_FALSE(m.is_prime_set());
  CHECK(m.unit() == UnitIdele::one());

  ParameterPoint z = chi(FullAdele(zero_at_two(), 0));
  REQUIRE(z.is_prime_set());
  CHECK(z.prime_set() == PrimeSet::finite(PrimeBase::Extended, {Prime(2), ExtendedPrime::infinity()}));

  Gen g(23);
  for (int i = 0; i < 300; ++i) {
    FullAdele a = g.chance(0.5) ? g.invertible(50) : g.full_adele();
    CHECK(chi(scale(g.rational(30), a)) == chi(a));
  }
}

TEST_CASE("exact orbit witnesses") {
  CHECK(exact_orbit_witness(embed_finite(2), embed_finite(6)) == Rational(3));
  FullAdele x = embed_full(make_rational(5, 7));
  CHECK(exact_orbit_witness(x, x) == Rational(1));
  CHECK_FALSE(exact_orbit_witness(UnitIdele::one().value(), three_at_two().value()));
  // Positive rationals only for finite adeles.
  CHECK_FALSE(exact_orbit_witness(embed_finite(2), embed_finite(-2)));
  CHECK(exact_orbit_witness(embed_full(2), embed_full(-2)) == Rational(-1));

  Gen g(24);
  for (int i = 0; i < 200; ++i) {
    FullAdele a = g.full_adele();
    if (a.is_zero()) continue;
    Rational r = g.rational(100);
    CHECK(exact_orbit_witness(a, scale(r, a)) == r);
  }
}

TEST_CASE("approx_witness examples") {
  FiniteAdele one = embed_finite(1);
  Neighbourhood v({PadicBall{Prime(2), 0, 3}, PadicBall{Prime(3), 1, 1}}, std::nullopt);
  CHECK(v.contains(scale(16, one)));
  CHECK(v.contains(scale(approx_witness(one, v), one)));

  Neighbourhood own = canonical_neighbourhood(one, {{Prime(2), 2}, {Prime(5), 1}});
  CHECK(approx_witness(one, own) == 1);

  FullAdele a(zero_at_two(), 1);
  Neighbourhood w({PadicBall{Prime(3), 2, 1}}, RealInterval{5, 6});
  CHECK(w.contains(scale(make_rational(23, 4), a)));
  CHECK(approx_witness(a, w) == make_rational(23, 4));
}

TEST_CASE("approx_witness errors") {
  Neighbourhood excludes_zero({PadicBall{Prime(2), 1, 1}}, std::nullopt);
  CHECK(code_of([&] { approx_witness(zero_at_two(), excludes_zero); }) == ErrorCode::Infeasible);

  FullAdele vanishing_real(embed_finite(1), 0);
  Neighbourhood positive({}, RealInterval{1, 2});
  CHECK(code_of([&] { approx_witness(vanishing_real, positive); }) == ErrorCode::Infeasible);

  Neighbourhood near_three_at_two({PadicBall{Prime(2), 3, 3}}, RealInterval{make_rational(1, 2), make_rational(3, 2)});
  CHECK(code_of([&] { approx_witness(UnitIdele::one().value(), near_three_at_two); }) ==
        ErrorCode::ClosedOrbitMiss);
}

TEST_CASE("approx_witness finds verified witnesses for finite pairs") {
  Gen g(25);
  for (int i = 0; i < 300; ++i) {
    FiniteAdele a = g.finite_adele();
    if (a.is_zero()) continue;
    FiniteAdele b = coarser(g, a);
    REQUIRE(orbit_closure_contains(a, b));
    Neighbourhood v = canonical_neighbourhood(b, g.radii(kSmallPrimes, -1, 3));
    Rational r = approx_witness(a, v);
    CHECK(r > 0);
    CHECK(v.contains(scale(r, a)));
  }
}

TEST_CASE("approx_witness on noninvertible full adeles") {
  Gen g(26);
  int done = 0;
  while (done < 300) {
    FullAdele a = g.full_adele(0.3);
    if (is_invertible(a) || a.is_zero()) continue;
    FiniteAdele bf = coarser(g, a.finite_part());
    Rational real = a.real_part() == 0 || g.chance(0.2) ? Rational(0) : g.rational(40);
    FullAdele b(bf, real);
    if (!orbit_closure_contains(a, b)) continue;
    Rational width = make_rational(1, g.uniform(1, 8));
    Neighbourhood v = canonical_neighbourhood(b, g.radii(kSmallPrimes, 0, 3), width);
    Rational r = approx_witness(a, v);
    CHECK(v.contains(scale(r, a)));
    ++done;
  }
}

TEST_CASE("approx_witness inside closed orbits") {
  Gen g(27);
  for (int i = 0; i < 200; ++i) {
    FullAdele a = g.invertible(60);
    Rational s = g.rational(60);
    FullAdele b = scale(s, a);
    Neighbourhood v = canonical_neighbourhood(b, g.radii(kSmallPrimes, -1, 3), make_rational(1, 4));
    Rational r = approx_witness(a, v);
    CHECK(v.contains(scale(r, a)));
  }
}

TEST_CASE("canonical neighbourhoods contain their centre") {
  Gen g(28);
  for (int i = 0; i < 300; ++i) {
    FullAdele b = g.full_adele();
    CHECK(canonical_neighbourhood(b, g.radii(kSmallPrimes, -2, 4), make_rational(1, 8)).contains(b));
  }
}

TEST_CASE("zero divisors") {
  CHECK(is_zero_divisor(zero_at_two()));
  CHECK_FALSE(is_zero_divisor(embed_finite(6)));
  CHECK(is_zero_divisor(FiniteAdele::zero()));
  CHECK(code_of([] { is_zero_divisor(embed_finite(make_rational(1, 2))); }) == ErrorCode::NotIntegral);
}

TEST_CASE("non zero divisors have dense orbits in the integral adeles") {
  Gen g(29);
  for (int i = 0; i < 200; ++i) {
    FiniteAdele a = g.finite_adele(0.0);
    if (a.default_rule().kind == DefaultKind::Zero) continue;
    // Clear denominators so that a is integral.
    Rational lambda = 1;
    for (const auto& [p, x] : a.explicit_components()) {
      long v = valuation(x, p).value();
      if (v < 0) lambda *= prime_power(p.value(), -v);
    }
    a = scale(lambda, a);
    REQUIRE_FALSE(is_zero_divisor(a));
    FiniteAdele target({{Prime(2), g.uniform(0, 50)}, {Prime(3), g.uniform(1, 50)}}, DefaultSpec::rational(1));
    Neighbourhood v = canonical_neighbourhood(target, g.radii(kSmallPrimes, 0, 3));
    CHECK(v.contains(scale(approx_witness(a, v), a)));
  }
}

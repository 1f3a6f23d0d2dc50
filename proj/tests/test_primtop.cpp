#include <doctest.h>

#include "adelic/error.hpp"
#include "adelic/primtop.hpp"
#include "generators.hpp"

using namespace adelic;
using adelic::testing::Gen;

namespace {

constexpr PrimeBase F = PrimeBase::Finite;
constexpr PrimeBase E = PrimeBase::Extended;

PrimeSet fin(PrimeBase b, std::initializer_list<std::uint64_t> ps) {
  PrimeSet::Members m;
  for (auto p : ps) m.insert(Prime(p));
  return PrimeSet::finite(b, std::move(m));
}

SetDescriptor of(std::initializer_list<Atom> atoms) { return SetDescriptor{std::vector<Atom>(atoms)}; }

ClosedSetDescriptor up(PrimeSet s) {
  ClosedSetDescriptor c;
  c.add_up_set(std::move(s));
  return c;
}

UnitIdele real_unit(const Rational& x) { return UnitIdele(FullAdele(FiniteAdele({}, DefaultSpec::rational(1)), x)); }

Character angles(CharacterGroup g, std::map<Prime, Rational> m, Rational sign = 0) {
  return Character(g, std::move(sign), std::move(m));
}

}  // namespace

TEST_CASE("basic opens") {
  CHECK(pc_basic_open({}).contains(fin(F, {2, 3})));
  BasicOpen u2 = pc_basic_open({Prime(2)});
  CHECK(u2.contains(fin(F, {3, 5})));
  CHECK_FALSE(u2.contains(fin(F, {2})));
  CHECK_FALSE(u2.contains(PrimeSet::cofinite(F, {Prime(3)})));

  Gen g(41);
  const auto universe = testing::places({2, 3, 5, 7}, false);
  for (int i = 0; i < 300; ++i) {
    PrimeSet::Members gs, hs;
    for (auto p : g.subset({2, 3, 5, 7, 11}, 0.3)) gs.insert(Prime(p));
    for (auto p : g.subset({2, 3, 5, 7, 11}, 0.3)) hs.insert(Prime(p));
    PrimeSet::Members both = gs;
    both.insert(hs.begin(), hs.end());
    PrimeSet t = g.prime_set(F, universe);
    BasicOpen meet = pc_basic_open(gs).intersect(pc_basic_open(hs));
    CHECK(meet.contains(t) == (pc_basic_open(gs).contains(t) && pc_basic_open(hs).contains(t)));
    CHECK(meet.contains(t) == pc_basic_open(both).contains(t));
  }
}

TEST_CASE("power-cofinite closure examples") {
  CHECK(pc_closure(std::vector<PrimeSet>{fin(F, {2})}) == up(fin(F, {2})));
  CHECK(pc_closure(std::vector<PrimeSet>{}).is_empty());
  ClosedSetDescriptor everything = pc_closure(std::vector<PrimeSet>{PrimeSet::empty(F)});
  CHECK(everything == up(PrimeSet::empty(F)));
  CHECK(everything.contains(atom::PrimeSetPoint{PrimeSet::all(F)}));
  // Redundant generators are absorbed.
  CHECK(pc_closure(std::vector<PrimeSet>{fin(F, {2, 3}), fin(F, {2})}) == up(fin(F, {2})));
}

TEST_CASE("power-cofinite density") {
  CHECK(pc_dense(of({atom::PrimeSetPoint{PrimeSet::empty(E)}})));
  CHECK_FALSE(pc_dense(of({atom::PrimeSetPoint{fin(E, {2})}, atom::PrimeSetPoint{fin(E, {3})}})));
  CHECK(pc_dense(of({atom::SingletonFamily{E, {Prime(2)}}})));
  CHECK_FALSE(pc_dense(of({})));
}

TEST_CASE("tau closure examples") {
  CHECK(tau_closure(of({atom::PrimeSetPoint{fin(E, {2})}})) == up(fin(E, {2})));
  CHECK(tau_closure(of({atom::PrimeSetPoint{PrimeSet::empty(E)}})).is_whole());
  CHECK(tau_closure(of({atom::SingletonFamily{E, {}}})).is_whole());
  CHECK(tau_closure(of({})).is_empty());

  atom::UnitFamily family;
  for (int n = 1; n <= 5; ++n) family.prefix.push_back(real_unit(make_rational(1, static_cast<long>(nth_prime(n).value()))));
  atom::UnitFamily finite_only = family;
  family.inf_abs_zero = true;
  CHECK(tau_closure(of({family})).is_whole());
  ClosedSetDescriptor prefix = tau_closure(of({finite_only}));
  CHECK_FALSE(prefix.is_whole());
  CHECK(prefix.unit_points().size() == 5);

  CHECK_THROWS_AS(tau_closure(of({atom::AllCharacters{}})), Error);
  atom::UnitFamily rising{{real_unit(1), real_unit(2)}, true};
  CHECK_THROWS_AS(tau_closure(of({rising})), Error);
}

TEST_CASE("specialization examples") {
  ParameterPoint two(fin(E, {2}));
  ParameterPoint two_three(fin(E, {2, 3}));
  ParameterPoint empty(PrimeSet::empty(E));
  ParameterPoint one(real_unit(1));
  CHECK(point_specializes(two, two_three));
  CHECK_FALSE(point_specializes(two_three, two));
  CHECK(point_specializes(empty, one));
  CHECK_FALSE(point_specializes(one, two));
  CHECK(point_specializes(one, one));
  CHECK_FALSE(point_specializes(one, ParameterPoint(real_unit(2))));
}

TEST_CASE("specialization is a preorder matching the tau closure") {
  Gen g(42);
  const auto universe = testing::places({2, 3, 5}, true);
  std::vector<ParameterPoint> pts;
  for (int i = 0; i < 30; ++i) pts.emplace_back(g.prime_set(E, universe));
  for (int i = 0; i < 5; ++i) pts.emplace_back(g.unit(20));
  for (const auto& x : pts) {
    CHECK(point_specializes(x, x));
    Atom ax = x.is_prime_set() ? Atom(atom::PrimeSetPoint{x.prime_set()}) : Atom(atom::UnitPoint{x.unit()});
    ClosedSetDescriptor cl = tau_closure(of({ax}));
    for (const auto& y : pts) {
      Atom ay = y.is_prime_set() ? Atom(atom::PrimeSetPoint{y.prime_set()}) : Atom(atom::UnitPoint{y.unit()});
      CHECK(point_specializes(x, y) == cl.contains(ay));
      if (point_specializes(x, y) && point_specializes(y, x)) CHECK(x == y);
      for (const auto& z : pts) {
        if (point_specializes(x, y) && point_specializes(y, z)) CHECK(point_specializes(x, z));
      }
    }
  }
}

TEST_CASE("Prim C_Q closure examples") {
  ClosedSetDescriptor c = primcq_closure(of({atom::PrimeSetPoint{fin(F, {2})}}));
  ClosedSetDescriptor want = up(fin(F, {2}));
  want.set_all_characters();
  CHECK(c == want);
  Character trivial = Character::trivial(CharacterGroup::QPlus);
  ClosedSetDescriptor t = primcq_closure(of({atom::CharacterPoint{trivial}}));
  REQUIRE(t.character_points().size() == 1);
  CHECK(t.character_points()[0] == trivial);
  CHECK(t.up_sets().empty());
  CHECK(primcq_closure(of({})).is_empty());

  CHECK_THROWS_AS(primcq_closure(of({atom::PrimeSetPoint{PrimeSet::all(F)}})), Error);
  try {
    primcq_closure(of({atom::PrimeSetPoint{PrimeSet::all(F)}}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ImproperPoint);
  }
  CHECK_THROWS_AS(primcq_closure(of({atom::CharacterPoint{Character::trivial(CharacterGroup::QFull)}})), Error);
}

TEST_CASE("full Prim closure examples") {
  ClosedSetDescriptor c = prim_full_closure(of({atom::PrimeSetPoint{fin(E, {2})}}));
  CHECK(c.all_characters());
  CHECK(c.contains(atom::PrimeSetPoint{fin(E, {2, 3})}));
  CHECK(c.contains(atom::PrimeSetPoint{PrimeSet::cofinite(E, {Prime(3)})}));
  CHECK_FALSE(c.contains(atom::PrimeSetPoint{fin(E, {3})}));

  UnitIdele u = real_unit(make_rational(3, 2));
  ClosedSetDescriptor cu = prim_full_closure(of({atom::UnitPoint{u}}));
  REQUIRE(cu.unit_points().size() == 1);
  CHECK(cu.unit_points()[0] == u);
  CHECK_FALSE(cu.all_characters());

  atom::UnitFamily family{{real_unit(1), real_unit(make_rational(1, 2))}, true};
  CHECK(prim_full_closure(of({family})).is_whole());
  CHECK(prim_full_closure(of({atom::SingletonFamily{E, {}}})).is_whole());
  CHECK_THROWS_AS(prim_full_closure(of({atom::PrimeSetPoint{PrimeSet::all(E)}})), Error);
}

TEST_CASE("prim_equal examples") {
  Character g1 = angles(CharacterGroup::QPlus, {{Prime(2), make_rational(1, 2)}});
  Character g2 = angles(CharacterGroup::QPlus, {{Prime(3), make_rational(1, 3)}});
  CHECK(prim_equal({fin(F, {2}), g1}, {fin(F, {2}), g2}));
  CHECK_FALSE(prim_equal({PrimeSet::all(F), g1}, {PrimeSet::all(F), g2}));
  CHECK(prim_equal({PrimeSet::all(F), g1}, {PrimeSet::all(F), g1}));
  CHECK_FALSE(prim_equal({fin(F, {2}), g1}, {fin(F, {3}), g1}));
}

TEST_CASE("character evaluation") {
  Character half = angles(CharacterGroup::QPlus, {{Prime(2), make_rational(1, 2)}});
  CHECK(character_eval(half, 4) == 0);
  CHECK(character_eval(half, 2) == make_rational(1, 2));
  CHECK(character_eval(half, 1) == 0);
  Character c = angles(CharacterGroup::QPlus, {{Prime(2), make_rational(1, 4)}, {Prime(3), make_rational(1, 3)}});
  CHECK(character_eval(c, make_rational(2, 3)) == make_rational(11, 12));
  CHECK_THROWS_AS(character_eval(c, -1), Error);
  CHECK_THROWS_AS(character_eval(c, 0), Error);

  Character s = angles(CharacterGroup::QFull, {{Prime(5), make_rational(3, 4)}}, make_rational(1, 2));
  CHECK(character_eval(s, -1) == make_rational(1, 2));
  CHECK(character_eval(s, -5) == make_rational(1, 4));
  // Angles are reduced mod 1.
  CHECK(angles(CharacterGroup::QPlus, {{Prime(2), make_rational(5, 4)}}) ==
        angles(CharacterGroup::QPlus, {{Prime(2), make_rational(1, 4)}}));

  Gen g(43);
  auto mod1 = [](Rational x) -> Rational {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rational(f);
  };
  for (int i = 0; i < 300; ++i) {
    Character k = g.character(CharacterGroup::QFull);
    Rational r = g.rational(60), t = g.rational(60);
    CHECK(character_eval(k, r * t) == mod1(character_eval(k, r) + character_eval(k, t)));
  }
}

TEST_CASE("Kuratowski axioms on random descriptors") {
  Gen g(44);
  std::vector<UnitIdele> units;
  for (int i = 0; i < 4; ++i) units.push_back(g.unit(10));
  for (Space space : {Space::PowerCofinite, Space::Tau, Space::PrimCQ, Space::PrimFull}) {
    CAPTURE(static_cast<int>(space));
    const CharacterGroup group = space == Space::PrimCQ ? CharacterGroup::QPlus : CharacterGroup::QFull;
    std::vector<Character> chars;
    for (int i = 0; i < 4; ++i) chars.push_back(g.character(group));
    CHECK(closure(SetDescriptor{}, space).is_empty());
    for (int i = 0; i < 150; ++i) {
      PrimeBase base = space == Space::PowerCofinite ? (g.chance(0.5) ? F : E) : testing::space_base(space);
      SetDescriptor a = testing::random_descriptor(g, space, base, units, chars);
      SetDescriptor b = testing::random_descriptor(g, space, base, units, chars);
      ClosedSetDescriptor ca = closure(a, space);
      for (const Atom& x : a.atoms) CHECK(ca.contains(x));
      CHECK(closure(ca.as_descriptor(space), space) == ca);
      CHECK(closure(a.unite(b), space) == ca.unite(closure(b, space), space));
    }
  }
}

TEST_CASE("malformed descriptors") {
  CHECK_THROWS_AS(closure(of({atom::UnitPoint{real_unit(1)}}), Space::PrimCQ), Error);
  CHECK_THROWS_AS(closure(of({atom::CharacterPoint{Character::trivial(CharacterGroup::QPlus)}}), Space::Tau), Error);
  CHECK_THROWS_AS(closure(of({atom::PrimeSetPoint{fin(E, {2})}}), Space::PrimCQ), Error);
}

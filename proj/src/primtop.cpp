#include "adelic/primtop.hpp"

#include <algorithm>

#include "adelic/error.hpp"

namespace adelic {

namespace {

Rational reduce_angle(const Rational& t) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return t - Rational(fl);
}

}  // namespace

Character::Character(CharacterGroup group, Rational sign_angle, std::map<Prime, Rational> angles)
    : group_(group), sign_angle_(reduce_angle(sign_angle)) {
  if (group_ == CharacterGroup::QPlus && sign_angle_ != 0) {
    fail(ErrorCode::InvalidArgument, "characters of Q^*_+ carry no sign angle");
  }
  if (sign_angle_ != 0 && sign_angle_ != Rational(1, 2)) {
    fail(ErrorCode::InvalidArgument, "the value at -1 must be +1 or -1 (angle 0 or 1/2)");
  }
  for (const auto& [p, t] : angles) {
    Rational r = reduce_angle(t);
    if (r != 0) angles_.emplace(p, r);
  }
}

bool character_less(const Character& a, const Character& b) {
  if (a.group() != b.group()) return a.group() < b.group();
  if (a.sign_angle() != b.sign_angle()) return a.sign_angle() < b.sign_angle();
  return std::lexicographical_compare(
      a.angles().begin(), a.angles().end(), b.angles().begin(), b.angles().end(),
      [](const auto& l, const auto& r) { return l.first != r.first ? l.first < r.first : l.second < r.second; });
}

Rational character_eval(const Character& c, const Rational& r) {
  if (r == 0) fail(ErrorCode::InvalidArgument, "characters are evaluated at nonzero rationals");
  if (r < 0 && c.group() == CharacterGroup::QPlus) {
    fail(ErrorCode::NegativeForQPlus, "a character of Q^*_+ cannot be evaluated at a negative rational");
  }
  Rational angle = r < 0 ? c.sign_angle() : Rational(0);
  for (const auto& [p, t] : c.angles()) angle += t * valuation(r, p).value();
  return reduce_angle(angle);
}

SetDescriptor SetDescriptor::unite(const SetDescriptor& other) const {
  SetDescriptor out = *this;
  out.atoms.insert(out.atoms.end(), other.atoms.begin(), other.atoms.end());
  return out;
}

ClosedSetDescriptor ClosedSetDescriptor::whole() {
  ClosedSetDescriptor c;
  c.whole_ = true;
  return c;
}

bool ClosedSetDescriptor::is_empty() const noexcept {
  return !whole_ && up_sets_.empty() && units_.empty() && characters_.empty() && !all_characters_;
}

ClosedSetDescriptor ClosedSetDescriptor::canonical(Space space) const {
  if (whole_) return whole();
  ClosedSetDescriptor out;

  bool has_bottom = std::any_of(up_sets_.begin(), up_sets_.end(), [](const auto& s) { return s.is_empty(); });
  if (has_bottom && space != Space::PowerCofinite) return whole();

  // Keep only minimal generators; an up-set inside another is redundant.
  for (std::size_t i = 0; i < up_sets_.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < up_sets_.size() && !redundant; ++j) {
      if (i == j || !up_sets_[j].is_subset_of(up_sets_[i])) continue;
      // Equal generators: keep the first occurrence only.
      redundant = !up_sets_[i].is_subset_of(up_sets_[j]) || j < i;
    }
    if (!redundant) out.up_sets_.push_back(up_sets_[i]);
  }
  std::sort(out.up_sets_.begin(), out.up_sets_.end());

  out.units_ = units_;
  std::sort(out.units_.begin(), out.units_.end(), unit_less);
  out.units_.erase(std::unique(out.units_.begin(), out.units_.end()), out.units_.end());

  out.all_characters_ = all_characters_;
  if (!all_characters_) {
    out.characters_ = characters_;
    std::sort(out.characters_.begin(), out.characters_.end(), character_less);
    out.characters_.erase(std::unique(out.characters_.begin(), out.characters_.end()), out.characters_.end());
  }
  return out;
}

ClosedSetDescriptor ClosedSetDescriptor::unite(const ClosedSetDescriptor& other, Space space) const {
  if (whole_ || other.whole_) return whole();
  ClosedSetDescriptor out = *this;
  out.up_sets_.insert(out.up_sets_.end(), other.up_sets_.begin(), other.up_sets_.end());
  out.units_.insert(out.units_.end(), other.units_.begin(), other.units_.end());
  out.characters_.insert(out.characters_.end(), other.characters_.begin(), other.characters_.end());
  out.all_characters_ = all_characters_ || other.all_characters_;
  return out.canonical(space);
}

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

bool ClosedSetDescriptor::contains(const Atom& a) const {
  if (whole_) return true;
  auto in_up_sets = [&](const PrimeSet& s) {
    return std::any_of(up_sets_.begin(), up_sets_.end(), [&](const auto& g) { return g.is_subset_of(s); });
  };
  auto has_unit = [&](const UnitIdele& u) { return std::find(units_.begin(), units_.end(), u) != units_.end(); };
  return std::visit(
      overloaded{
          [&](const atom::PrimeSetPoint& x) { return in_up_sets(x.set); },
          // Infinitely many singletons but finitely many generators: only the
          // generator {} covers them all.
          [&](const atom::SingletonFamily&) {
            return std::any_of(up_sets_.begin(), up_sets_.end(), [](const auto& g) { return g.is_empty(); });
          },
          [&](const atom::UpSet& x) { return in_up_sets(x.generator); },
          [&](const atom::UnitPoint& x) { return has_unit(x.unit); },
          [&](const atom::UnitFamily& x) {
            return !x.inf_abs_zero && std::all_of(x.prefix.begin(), x.prefix.end(), has_unit);
          },
          [&](const atom::CharacterPoint& x) {
            return all_characters_ ||
                   std::find(characters_.begin(), characters_.end(), x.character) != characters_.end();
          },
          [&](const atom::AllCharacters&) { return all_characters_; },
      },
      a);
}

namespace {

PrimeBase base_of(Space space) {
  return space == Space::PrimCQ ? PrimeBase::Finite : PrimeBase::Extended;
}

}  // namespace

SetDescriptor ClosedSetDescriptor::as_descriptor(Space space) const {
  SetDescriptor out;
  if (whole_) {
    out.atoms.push_back(atom::UpSet{PrimeSet::empty(base_of(space))});
    if (space == Space::PrimCQ || space == Space::PrimFull) out.atoms.push_back(atom::AllCharacters{});
    return out;
  }
  for (const auto& s : up_sets_) out.atoms.push_back(atom::UpSet{s});
  for (const auto& u : units_) out.atoms.push_back(atom::UnitPoint{u});
  for (const auto& c : characters_) out.atoms.push_back(atom::CharacterPoint{c});
  if (all_characters_) out.atoms.push_back(atom::AllCharacters{});
  return out;
}

BasicOpen BasicOpen::intersect(const BasicOpen& other) const {
  PrimeSet::Members g = excluded_;
  g.insert(other.excluded_.begin(), other.excluded_.end());
  return BasicOpen(std::move(g));
}

BasicOpen pc_basic_open(PrimeSet::Members g) { return BasicOpen(std::move(g)); }

void validate(const SetDescriptor& a, Space space) {
  std::optional<PrimeBase> seen_base;
  auto check_base = [&](PrimeBase b) {
    if (space == Space::PowerCofinite) {
      if (seen_base && *seen_base != b) fail(ErrorCode::MalformedDescriptor, "prime sets over different bases");
      seen_base = b;
    } else if (b != base_of(space)) {
      fail(ErrorCode::MalformedDescriptor,
           space == Space::PrimCQ ? "expected subsets of the finite primes"
                                  : "expected subsets of the extended primes");
    }
  };
  auto check_proper = [&](const PrimeSet& s) {
    if ((space == Space::PrimCQ || space == Space::PrimFull) && s.is_all()) {
      fail(ErrorCode::ImproperPoint, "the full prime set is not a point of this space");
    }
  };
  auto reject = [&](const char* what) {
    fail(ErrorCode::MalformedDescriptor, std::string(what) + " are not points of this space");
  };
  auto check_character = [&](const Character& c) {
    if (space == Space::PowerCofinite || space == Space::Tau) reject("characters");
    CharacterGroup want = space == Space::PrimCQ ? CharacterGroup::QPlus : CharacterGroup::QFull;
    if (c.group() != want) fail(ErrorCode::MalformedDescriptor, "character of the wrong group");
  };
  auto check_unit_space = [&]() {
    if (space == Space::PowerCofinite || space == Space::PrimCQ) reject("unit ideles");
  };

  for (const Atom& atom : a.atoms) {
    std::visit(overloaded{
                   [&](const atom::PrimeSetPoint& x) {
                     check_base(x.set.base());
                     check_proper(x.set);
                   },
                   [&](const atom::SingletonFamily& x) {
                     check_base(x.base);
                     if (x.base == PrimeBase::Finite &&
                         std::any_of(x.excluded.begin(), x.excluded.end(),
                                     [](const auto& p) { return p.is_infinity(); })) {
                       fail(ErrorCode::MalformedDescriptor, "infinity excluded from a finite-prime family");
                     }
                   },
                   [&](const atom::UpSet& x) {
                     check_base(x.generator.base());
                     check_proper(x.generator);
                   },
                   [&](const atom::UnitPoint&) { check_unit_space(); },
                   [&](const atom::UnitFamily& x) {
                     check_unit_space();
                     if (x.inf_abs_zero) {
                       for (std::size_t i = 1; i < x.prefix.size(); ++i) {
                         if (!(x.prefix[i].real_part() < x.prefix[i - 1].real_part())) {
                           fail(ErrorCode::MalformedDescriptor,
                                "a family accumulating at 0 needs strictly decreasing real parts");
                         }
                       }
                     }
                   },
                   [&](const atom::CharacterPoint& x) { check_character(x.character); },
                   [&](const atom::AllCharacters&) {
                     if (space == Space::PowerCofinite || space == Space::Tau) reject("characters");
                   },
               },
               atom);
  }
}

namespace {

bool is_prime_atom(const Atom& a) {
  return std::holds_alternative<atom::PrimeSetPoint>(a) || std::holds_alternative<atom::SingletonFamily>(a) ||
         std::holds_alternative<atom::UpSet>(a);
}

bool prime_part_dense(const SetDescriptor& a) {
  return std::any_of(a.atoms.begin(), a.atoms.end(), [](const Atom& x) {
    if (const auto* p = std::get_if<atom::PrimeSetPoint>(&x)) return p->set.is_empty();
    if (const auto* u = std::get_if<atom::UpSet>(&x)) return u->generator.is_empty();
    return std::holds_alternative<atom::SingletonFamily>(x);
  });
}

bool has_prime_atoms(const SetDescriptor& a) { return std::any_of(a.atoms.begin(), a.atoms.end(), is_prime_atom); }

// Up-set generators of the power-cofinite closure of a non-dense prime part.
void add_prime_closure(const SetDescriptor& a, ClosedSetDescriptor& out) {
  for (const Atom& x : a.atoms) {
    if (const auto* p = std::get_if<atom::PrimeSetPoint>(&x)) out.add_up_set(p->set);
    if (const auto* u = std::get_if<atom::UpSet>(&x)) out.add_up_set(u->generator);
  }
}

bool unit_part_reaches_zero(const SetDescriptor& a) {
  return std::any_of(a.atoms.begin(), a.atoms.end(), [](const Atom& x) {
    const auto* f = std::get_if<atom::UnitFamily>(&x);
    return f && f->inf_abs_zero;
  });
}

// A finite set of unit ideles is closed in U.
void add_unit_points(const SetDescriptor& a, ClosedSetDescriptor& out) {
  for (const Atom& x : a.atoms) {
    if (const auto* u = std::get_if<atom::UnitPoint>(&x)) out.add_unit(u->unit);
    if (const auto* f = std::get_if<atom::UnitFamily>(&x)) {
      for (const auto& u : f->prefix) out.add_unit(u);
    }
  }
}

// Finite character lists are closed in the compact dual group.
void add_characters(const SetDescriptor& a, ClosedSetDescriptor& out) {
  for (const Atom& x : a.atoms) {
    if (const auto* c = std::get_if<atom::CharacterPoint>(&x)) out.add_character(c->character);
    if (std::holds_alternative<atom::AllCharacters>(x)) out.set_all_characters();
  }
}

}  // namespace

bool pc_dense(const SetDescriptor& a) {
  if (!std::all_of(a.atoms.begin(), a.atoms.end(), is_prime_atom)) {
    fail(ErrorCode::MalformedDescriptor, "density is defined for prime-set atoms only");
  }
  return prime_part_dense(a);
}

ClosedSetDescriptor pc_closure(const std::vector<PrimeSet>& points) {
  SetDescriptor a;
  for (const auto& s : points) a.atoms.push_back(atom::PrimeSetPoint{s});
  return pc_closure(a);
}

ClosedSetDescriptor pc_closure(const SetDescriptor& a) {
  validate(a, Space::PowerCofinite);
  ClosedSetDescriptor out;
  add_prime_closure(a, out);
  for (const Atom& x : a.atoms) {
    if (const auto* f = std::get_if<atom::SingletonFamily>(&x)) out.add_up_set(PrimeSet::empty(f->base));
  }
  return out.canonical(Space::PowerCofinite);
}

ClosedSetDescriptor tau_closure(const SetDescriptor& a) {
  validate(a, Space::Tau);
  if (prime_part_dense(a) || unit_part_reaches_zero(a)) return ClosedSetDescriptor::whole();
  ClosedSetDescriptor out;
  add_prime_closure(a, out);
  add_unit_points(a, out);
  return out.canonical(Space::Tau);
}

bool point_specializes(const ParameterPoint& x, const ParameterPoint& y) {
  if (!x.is_prime_set()) return x == y;
  if (x.prime_set().is_empty()) return true;
  return y.is_prime_set() && x.prime_set().is_subset_of(y.prime_set());
}

ClosedSetDescriptor primcq_closure(const SetDescriptor& a) {
  validate(a, Space::PrimCQ);
  if (prime_part_dense(a)) return ClosedSetDescriptor::whole();
  ClosedSetDescriptor out;
  // Each proper prime-set point has every character in its closure.
  if (has_prime_atoms(a)) out.set_all_characters();
  add_prime_closure(a, out);
  add_characters(a, out);
  return out.canonical(Space::PrimCQ);
}

ClosedSetDescriptor prim_full_closure(const SetDescriptor& a) {
  validate(a, Space::PrimFull);
  if (prime_part_dense(a) || unit_part_reaches_zero(a)) return ClosedSetDescriptor::whole();
  ClosedSetDescriptor out;
  if (has_prime_atoms(a)) out.set_all_characters();
  add_prime_closure(a, out);
  add_unit_points(a, out);
  add_characters(a, out);
  return out.canonical(Space::PrimFull);
}

ClosedSetDescriptor closure(const SetDescriptor& a, Space space) {
  switch (space) {
    case Space::PowerCofinite: return pc_closure(a);
    case Space::Tau: return tau_closure(a);
    case Space::PrimCQ: return primcq_closure(a);
    case Space::PrimFull: return prim_full_closure(a);
  }
  return ClosedSetDescriptor::empty();
}

bool prim_equal(const PrimPoint& x, const PrimPoint& y) {
  if (x.character.group() != CharacterGroup::QPlus || y.character.group() != CharacterGroup::QPlus) {
    fail(ErrorCode::InvalidArgument, "points of 2^P x characters use characters of Q^*_+");
  }
  const PrimeSet s = x.set.with_base(PrimeBase::Finite);
  const PrimeSet t = y.set.with_base(PrimeBase::Finite);
  if (s != t) return false;
  return !s.is_all() || x.character == y.character;
}

}  // namespace adelic

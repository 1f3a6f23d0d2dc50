#pragma once

// Closure operators on the parameter spaces of the primitive ideal spaces:
//
//   PowerCofinite  2^P or 2^P-bar, basic opens U_G = { T : T n G = 0 }
//   Tau            2^P-bar |_| U, the quotient topology pulled back along chi
//   PrimCQ         (2^P \ {P}) |_| characters of Q^*_+
//   PrimFull       characters of Q^* |_| (2^P-bar \ {P-bar}) |_| U
//
// Subsets are given by finite SetDescriptors, closures come back as
// canonical ClosedSetDescriptors so that equality of closed sets is decidable.

#include <map>
#include <set>
#include <variant>
#include <vector>

#include "adelic/adele.hpp"
#include "adelic/prime_set.hpp"
#include "adelic/quasiorbit.hpp"

namespace adelic {

enum class CharacterGroup { QPlus, QFull };

/// Finitely supported character of Q^*_+ or Q^*, stored as angles in [0, 1):
/// the value at a prime p is exp(2 pi i angle_p), and for Q^* the value at -1
/// is exp(2 pi i sign_angle) with sign_angle in {0, 1/2}.
class Character {
 public:
  Character(CharacterGroup group, Rational sign_angle, std::map<Prime, Rational> angles);

  static Character trivial(CharacterGroup group) { return Character(group, 0, {}); }

  CharacterGroup group() const noexcept { return group_; }
  const Rational& sign_angle() const noexcept { return sign_angle_; }
  const std::map<Prime, Rational>& angles() const noexcept { return angles_; }

  bool operator==(const Character& other) const = default;

 private:
  CharacterGroup group_;
  Rational sign_angle_;
  std::map<Prime, Rational> angles_;
};

bool character_less(const Character& a, const Character& b);

/// Angle of c(r) in [0, 1). Throws NegativeForQPlus for r < 0 on Q^*_+.
Rational character_eval(const Character& c, const Rational& r);

namespace atom {

struct PrimeSetPoint {
  PrimeSet set;
};
/// { {p} : p not in excluded }.
struct SingletonFamily {
  PrimeBase base;
  PrimeSet::Members excluded;
};
/// { T : T contains generator }; lets closed sets be fed back as inputs.
struct UpSet {
  PrimeSet generator;
};
struct UnitPoint {
  UnitIdele unit;
};
/// An infinite family of unit ideles whose first members are `prefix`. With
/// inf_abs_zero set the real parts accumulate at 0 (the prefix must then be
/// strictly decreasing); without it the family is just the prefix.
struct UnitFamily {
  std::vector<UnitIdele> prefix;
  bool inf_abs_zero = false;
};
struct CharacterPoint {
  Character character;
};
struct AllCharacters {};

}  // namespace atom

using Atom = std::variant<atom::PrimeSetPoint, atom::SingletonFamily, atom::UpSet, atom::UnitPoint,
                          atom::UnitFamily, atom::CharacterPoint, atom::AllCharacters>;

/// Finite union of atoms.
struct SetDescriptor {
  std::vector<Atom> atoms;

  SetDescriptor unite(const SetDescriptor& other) const;
};

enum class Space { PowerCofinite, Tau, PrimCQ, PrimFull };

/// A closed set: the whole space, or a union of up-sets, unit points,
/// character points and possibly every character.
class ClosedSetDescriptor {
 public:
  static ClosedSetDescriptor whole();
  static ClosedSetDescriptor empty() { return {}; }

  bool is_whole() const noexcept { return whole_; }
  bool is_empty() const noexcept;
  const std::vector<PrimeSet>& up_sets() const noexcept { return up_sets_; }
  const std::vector<UnitIdele>& unit_points() const noexcept { return units_; }
  const std::vector<Character>& character_points() const noexcept { return characters_; }
  bool all_characters() const noexcept { return all_characters_; }

  void add_up_set(PrimeSet generator) { up_sets_.push_back(std::move(generator)); }
  void add_unit(UnitIdele u) { units_.push_back(std::move(u)); }
  void add_character(Character c) { characters_.push_back(std::move(c)); }
  void set_all_characters() { all_characters_ = true; }

  /// Absorbs redundant up-sets, merges duplicate points, sorts, and lets the
  /// whole space swallow everything.
  ClosedSetDescriptor canonical(Space space) const;

  ClosedSetDescriptor unite(const ClosedSetDescriptor& other, Space space) const;

  /// Is every point of the atom in this set?
  bool contains(const Atom& atom) const;

  /// The same set as a SetDescriptor, for feeding back into a closure.
  SetDescriptor as_descriptor(Space space) const;

  bool operator==(const ClosedSetDescriptor& other) const = default;

 private:
  bool whole_ = false;
  std::vector<PrimeSet> up_sets_;
  std::vector<UnitIdele> units_;
  std::vector<Character> characters_;
  bool all_characters_ = false;
};

/// Basic open set U_G of the power-cofinite topology.
class BasicOpen {
 public:
  explicit BasicOpen(PrimeSet::Members excluded) : excluded_(std::move(excluded)) {}

  bool contains(const PrimeSet& t) const { return !t.intersects(excluded_); }
  BasicOpen intersect(const BasicOpen& other) const;
  const PrimeSet::Members& excluded() const noexcept { return excluded_; }

 private:
  PrimeSet::Members excluded_;
};

BasicOpen pc_basic_open(PrimeSet::Members g);

ClosedSetDescriptor pc_closure(const std::vector<PrimeSet>& points);
ClosedSetDescriptor pc_closure(const SetDescriptor& a);

/// Does the prime-set part meet every U_G? Only prime-set atoms are allowed.
bool pc_dense(const SetDescriptor& a);

ClosedSetDescriptor tau_closure(const SetDescriptor& a);

/// y lies in the tau-closure of {x}.
bool point_specializes(const ParameterPoint& x, const ParameterPoint& y);

ClosedSetDescriptor primcq_closure(const SetDescriptor& a);
ClosedSetDescriptor prim_full_closure(const SetDescriptor& a);

ClosedSetDescriptor closure(const SetDescriptor& a, Space space);

/// A point (S, gamma) of 2^P x characters of Q^*_+.
struct PrimPoint {
  PrimeSet set;
  Character character;
};

/// (S, g) ~ (T, h) iff S = T, and additionally g = h when S = P.
bool prim_equal(const PrimPoint& x, const PrimPoint& y);

/// Throws MalformedDescriptor (or ImproperPoint) unless every atom belongs to the space.
void validate(const SetDescriptor& a, Space space);

}  // namespace adelic

#include "json_io.hpp"

#include <algorithm>
#include <string>

#include "adelic/error.hpp"

namespace adelic::json_io {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

const json* optional_field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object"));
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

// Rejects keys outside `allowed` so that misspelt fields are not silently dropped.
void expect_keys(const json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) malformed("expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      malformed("unexpected field \"" + key + "\"");
    }
  }
}

std::string string_from(const json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const json& array_from(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  return j;
}

bool bool_from(const json& j, const char* what) {
  if (!j.is_boolean()) malformed(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

long long integer_from(const json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<long long>();
}

PrimeBase base_from(const json& j) {
  std::string s = string_from(j, "base");
  if (s == "finite") return PrimeBase::Finite;
  if (s == "extended") return PrimeBase::Extended;
  malformed("base must be \"finite\" or \"extended\"");
}

std::string base_name(PrimeBase b) { return b == PrimeBase::Finite ? "finite" : "extended"; }

PrimeSet::Members places_from(const json& j, const char* what) {
  PrimeSet::Members out;
  for (const json& x : array_from(j, what)) out.insert(place_from(x));
  return out;
}

json places_json(const PrimeSet::Members& m) {
  json out = json::array();
  for (const auto& p : m) out.push_back(to_json(p));
  return out;
}

FiniteAdele finite_adele_from(const json& j) {
  expect_keys(j, {"explicit", "default", "real"});
  FiniteAdele::ComponentMap m;
  if (const json* e = optional_field(j, "explicit")) {
    if (!e->is_object()) malformed("\"explicit\" must be an object keyed by primes");
    for (const auto& [key, value] : e->items()) m.emplace(prime_from(json(key)), rational_from(value));
  }
  DefaultSpec spec;
  if (const json* d = optional_field(j, "default")) {
    expect_keys(*d, {"kind", "q"});
    std::string kind = string_from(field(*d, "kind"), "default kind");
    if (kind == "zero") {
      spec = DefaultSpec::zero();
    } else if (kind == "rational") {
      spec = DefaultSpec::rational(rational_from(field(*d, "q")));
    } else if (kind == "times_p") {
      spec = DefaultSpec::times_p(rational_from(field(*d, "q")));
    } else {
      malformed("default kind must be zero, rational or times_p");
    }
  } else {
    malformed("missing field \"default\"");
  }
  return FiniteAdele(std::move(m), std::move(spec));
}

ClosedSetDescriptor closed_from(const json& j) {
  if (const json* w = optional_field(j, "whole"); w && bool_from(*w, "whole")) return ClosedSetDescriptor::whole();
  ClosedSetDescriptor out;
  if (const json* u = optional_field(j, "up_sets")) {
    for (const json& s : array_from(*u, "up_sets")) out.add_up_set(prime_set_from(s));
  }
  if (const json* u = optional_field(j, "units")) {
    for (const json& x : array_from(*u, "units")) out.add_unit(unit_from(x));
  }
  if (const json* c = optional_field(j, "characters")) {
    for (const json& x : array_from(*c, "characters")) out.add_character(character_from(x));
  }
  if (const json* a = optional_field(j, "all_characters"); a && bool_from(*a, "all_characters")) {
    out.set_all_characters();
  }
  return out;
}

}  // namespace

json to_json(const Rational& q) { return format_rational(q); }

Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  return parse_rational(string_from(j, "rational"));
}

json to_json(const ExtendedPrime& p) {
  if (p.is_infinity()) return "inf";
  return p.prime().value();
}

Prime prime_from(const json& j) {
  if (j.is_number_unsigned()) return Prime(j.get<std::uint64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 20) {
      malformed("prime \"" + s + "\" is not a positive integer");
    }
    return Prime::from_integer(Integer(s));
  }
  malformed("prime must be a positive integer");
}

ExtendedPrime place_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedPrime::infinity();
  return prime_from(j);
}

json to_json(const Valuation& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

json to_json(const TruncatedPadic& t) {
  json out{{"prime", t.prime.value()},
           {"valuation", to_json(t.valuation)},
           {"precision", t.precision},
           {"modulus", integer_power(t.prime.value(), t.precision).get_str()}};
  out["unit_residue"] = t.unit_residue ? json(t.unit_residue->get_str()) : json(nullptr);
  return out;
}

json to_json(const FiniteAdele& a) {
  json e = json::object();
  for (const auto& [p, x] : a.explicit_components()) e[std::to_string(p.value())] = to_json(x);
  json d;
  switch (a.default_rule().kind) {
    case DefaultKind::Zero: d = {{"kind", "zero"}}; break;
    case DefaultKind::Rational: d = {{"kind", "rational"}, {"q", to_json(a.default_rule().q)}}; break;
    case DefaultKind::TimesP: d = {{"kind", "times_p"}, {"q", to_json(a.default_rule().q)}}; break;
  }
  return {{"explicit", e}, {"default", d}};
}

json to_json(const FullAdele& a) {
  json out = to_json(a.finite_part());
  out["real"] = to_json(a.real_part());
  return out;
}

json to_json(const Adele& a) {
  return std::visit([](const auto& x) { return to_json(x); }, a);
}

Adele adele_from(const json& j) {
  FiniteAdele f = finite_adele_from(j);
  if (const json* r = optional_field(j, "real")) return FullAdele(std::move(f), rational_from(*r));
  return f;
}

FullAdele full_adele_from(const json& j) {
  Adele a = adele_from(j);
  if (!std::holds_alternative<FullAdele>(a)) malformed("expected a full adele (with \"real\")");
  return std::get<FullAdele>(std::move(a));
}

json to_json(const UnitIdele& u) { return to_json(u.value()); }

UnitIdele unit_from(const json& j) { return UnitIdele(full_adele_from(j)); }

json to_json(const PrimeSet& s) {
  json out{{"base", base_name(s.base())}, {"kind", s.is_cofinite() ? "cofinite" : "finite"}};
  out[s.is_cofinite() ? "excluded" : "members"] = places_json(s.listed());
  return out;
}

PrimeSet prime_set_from(const json& j) {
  expect_keys(j, {"base", "kind", "members", "excluded"});
  PrimeBase base = base_from(field(j, "base"));
  std::string kind = string_from(field(j, "kind"), "prime set kind");
  if (kind == "finite") return PrimeSet::finite(base, places_from(field(j, "members"), "members"));
  if (kind == "cofinite") return PrimeSet::cofinite(base, places_from(field(j, "excluded"), "excluded"));
  malformed("prime set kind must be \"finite\" or \"cofinite\"");
}

json to_json(const Neighbourhood& v) {
  json balls = json::array();
  for (const auto& [p, b] : v.balls()) {
    balls.push_back({{"p", p.value()}, {"center", to_json(b.center)}, {"l", b.radius_exponent}});
  }
  json out{{"balls", balls}};
  if (v.interval()) out["interval"] = json::array({to_json(v.interval()->lower), to_json(v.interval()->upper)});
  return out;
}

Neighbourhood neighbourhood_from(const json& j) {
  std::vector<PadicBall> balls;
  expect_keys(j, {"balls", "interval"});
  if (const json* b = optional_field(j, "balls")) {
    for (const json& x : array_from(*b, "balls")) {
      expect_keys(x, {"p", "center", "l"});
      balls.push_back(PadicBall{prime_from(field(x, "p")), rational_from(field(x, "center")),
                                static_cast<long>(integer_from(field(x, "l"), "ball radius l"))});
    }
  }
  std::optional<RealInterval> interval;
  if (const json* i = optional_field(j, "interval")) {
    if (!i->is_array() || i->size() != 2) malformed("interval must be [lower, upper]");
    interval = RealInterval{rational_from((*i)[0]), rational_from((*i)[1])};
  }
  return Neighbourhood(std::move(balls), std::move(interval));
}

json to_json(const ParameterPoint& x) {
  if (x.is_prime_set()) return {{"prime_set", to_json(x.prime_set())}};
  return {{"unit", to_json(x.unit())}};
}

ParameterPoint parameter_point_from(const json& j) {
  if (const json* s = optional_field(j, "prime_set")) return ParameterPoint(prime_set_from(*s));
  if (const json* u = optional_field(j, "unit")) return ParameterPoint(unit_from(*u));
  malformed("a parameter point needs \"prime_set\" or \"unit\"");
}

json to_json(const Character& c) {
  json angles = json::object();
  for (const auto& [p, t] : c.angles()) angles[std::to_string(p.value())] = to_json(t);
  return {{"group", c.group() == CharacterGroup::QPlus ? "q_plus" : "q_full"},
          {"sign", to_json(c.sign_angle())},
          {"angles", angles}};
}

Character character_from(const json& j) {
  std::string g = string_from(field(j, "group"), "character group");
  CharacterGroup group;
  if (g == "q_plus") {
    group = CharacterGroup::QPlus;
  } else if (g == "q_full") {
    group = CharacterGroup::QFull;
  } else {
    malformed("character group must be \"q_plus\" or \"q_full\"");
  }
  Rational sign = 0;
  if (const json* s = optional_field(j, "sign")) sign = rational_from(*s);
  std::map<Prime, Rational> angles;
  if (const json* a = optional_field(j, "angles")) {
    if (!a->is_object()) malformed("\"angles\" must be an object keyed by primes");
    for (const auto& [key, value] : a->items()) angles.emplace(prime_from(json(key)), rational_from(value));
  }
  return Character(group, sign, std::move(angles));
}

json to_json(const Atom& a) {
  struct Visitor {
    json operator()(const atom::PrimeSetPoint& x) const { return {{"kind", "prime_set"}, {"set", to_json(x.set)}}; }
    json operator()(const atom::SingletonFamily& x) const {
      return {{"kind", "singleton_family"}, {"base", base_name(x.base)}, {"excluded", places_json(x.excluded)}};
    }
    json operator()(const atom::UpSet& x) const { return {{"kind", "up_set"}, {"generator", to_json(x.generator)}}; }
    json operator()(const atom::UnitPoint& x) const { return {{"kind", "unit"}, {"unit", to_json(x.unit)}}; }
    json operator()(const atom::UnitFamily& x) const {
      json prefix = json::array();
      for (const auto& u : x.prefix) prefix.push_back(to_json(u));
      return {{"kind", "unit_family"}, {"prefix", prefix}, {"inf_abs_zero", x.inf_abs_zero}};
    }
    json operator()(const atom::CharacterPoint& x) const {
      return {{"kind", "character"}, {"character", to_json(x.character)}};
    }
    json operator()(const atom::AllCharacters&) const { return {{"kind", "all_characters"}}; }
  };
  return std::visit(Visitor{}, a);
}

Atom atom_from(const json& j) {
  std::string kind = string_from(field(j, "kind"), "atom kind");
  if (kind == "prime_set") return atom::PrimeSetPoint{prime_set_from(field(j, "set"))};
  if (kind == "singleton_family") {
    PrimeSet::Members excluded;
    if (const json* e = optional_field(j, "excluded")) excluded = places_from(*e, "excluded");
    return atom::SingletonFamily{base_from(field(j, "base")), std::move(excluded)};
  }
  if (kind == "up_set") return atom::UpSet{prime_set_from(field(j, "generator"))};
  if (kind == "unit") return atom::UnitPoint{unit_from(field(j, "unit"))};
  if (kind == "unit_family") {
    atom::UnitFamily f;
    for (const json& x : array_from(field(j, "prefix"), "prefix")) f.prefix.push_back(unit_from(x));
    if (const json* z = optional_field(j, "inf_abs_zero")) f.inf_abs_zero = bool_from(*z, "inf_abs_zero");
    return f;
  }
  if (kind == "character") return atom::CharacterPoint{character_from(field(j, "character"))};
  if (kind == "all_characters") return atom::AllCharacters{};
  malformed("unknown atom kind \"" + kind + "\"");
}

json to_json(const SetDescriptor& d) {
  json atoms = json::array();
  for (const Atom& a : d.atoms) atoms.push_back(to_json(a));
  return {{"atoms", atoms}};
}

SetDescriptor set_descriptor_from(const json& j, Space space) {
  if (j.is_object() && !j.contains("atoms")) return closed_from(j).as_descriptor(space);
  SetDescriptor out;
  for (const json& a : array_from(field(j, "atoms"), "atoms")) out.atoms.push_back(atom_from(a));
  return out;
}

json to_json(const ClosedSetDescriptor& c) {
  if (c.is_whole()) return {{"whole", true}};
  json up = json::array();
  for (const auto& s : c.up_sets()) up.push_back(to_json(s));
  json units = json::array();
  for (const auto& u : c.unit_points()) units.push_back(to_json(u));
  json chars = json::array();
  for (const auto& x : c.character_points()) chars.push_back(to_json(x));
  return {{"whole", false},
          {"up_sets", up},
          {"units", units},
          {"characters", chars},
          {"all_characters", c.all_characters()}};
}

json to_json(const PrimPoint& x) { return {{"set", to_json(x.set)}, {"character", to_json(x.character)}}; }

PrimPoint prim_point_from(const json& j) {
  return PrimPoint{prime_set_from(field(j, "set")), character_from(field(j, "character"))};
}

}  // namespace adelic::json_io

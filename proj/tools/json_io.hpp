#pragma once

// JSON forms of the library values. Rationals travel as strings in canonical
// form; integers are also accepted on input. Every reader throws
// Error(ParseError) on a shape mismatch and lets the library constructors
// report invariant violations.

#include <json.hpp>

#include "adelic/adele.hpp"
#include "adelic/primtop.hpp"
#include "adelic/quasiorbit.hpp"

namespace adelic::json_io {

using nlohmann::json;

json to_json(const Rational& q);
Rational rational_from(const json& j);

json to_json(const ExtendedPrime& p);
Prime prime_from(const json& j);
ExtendedPrime place_from(const json& j);

json to_json(const Valuation& v);
json to_json(const TruncatedPadic& t);

json to_json(const FiniteAdele& a);
json to_json(const FullAdele& a);
json to_json(const Adele& a);
/// A document with "real" is a full adele.
Adele adele_from(const json& j);
FullAdele full_adele_from(const json& j);

json to_json(const UnitIdele& u);
UnitIdele unit_from(const json& j);

json to_json(const PrimeSet& s);
PrimeSet prime_set_from(const json& j);

json to_json(const Neighbourhood& v);
Neighbourhood neighbourhood_from(const json& j);

json to_json(const ParameterPoint& x);
ParameterPoint parameter_point_from(const json& j);

json to_json(const Character& c);
Character character_from(const json& j);

json to_json(const Atom& a);
Atom atom_from(const json& j);

json to_json(const SetDescriptor& d);
/// Accepts {"atoms": [...]} as well as the closed-set form, which is read
/// back through ClosedSetDescriptor::as_descriptor for the given space.
SetDescriptor set_descriptor_from(const json& j, Space space);

json to_json(const ClosedSetDescriptor& c);

json to_json(const PrimPoint& x);
PrimPoint prim_point_from(const json& j);

}  // namespace adelic::json_io

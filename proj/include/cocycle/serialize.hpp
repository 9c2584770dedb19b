#pragma once

#include <json.hpp>

#include "cocycle/gamma.hpp"
#include "cocycle/zcocycle.hpp"

namespace cocycle {

using Json = nlohmann::json;

// Integers that fit in 64 bits are written as numbers, larger ones as
// decimal strings; both forms are accepted on input.
Json integer_to_json(const Integer& n);
Integer integer_from_json(const Json& j);
// "p/q" strings; numbers are accepted on input
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {"t":"rat","n":1,"d":3}, {"t":"dy","n":3,"k":3}, {"t":"int","n":5},
// {"t":"mod","r":3,"m":4}, {"t":"vec","v":["1/2","0"]}, {"t":"real","x":0.5}
Json to_json(const GroupValue& v);
GroupValue group_value_from_json(const Json& j);

// {"bases":[2,2,2],"depth":3,"group":"rat","table":[...]}
Json to_json(const CylinderFunction& f);
CylinderFunction cylinder_function_from_json(const Json& j);

// {"type":"bernoulli","weights":[["1/2","1/2"]]}, {"type":"markov",...},
// {"type":"dirac","point":[0,1]}, {"type":"mixture","weights":[...],"parts":[...]};
// the string "uniform" is accepted on input
Json to_json(const MeasureSpec& mu);
MeasureSpec measure_from_json(const Json& j);
// a single measure or an array of them
std::vector<MeasureSpec> measures_from_json(const Json& j);

// {"N":2,"depth":4,"group":"rat","tables":[[...],[...]]}
Json to_json(const GeneratorFamily& family);
GeneratorFamily family_from_json(const Json& j);

// {"bases":[...],"depth":k,"jumps":[...]}
Json to_json(const FullGroupElement& r);
FullGroupElement full_group_element_from_json(const Json& j);

// {"towers":[{"height":h,"base":[...]}, ...]}
Json to_json(const TowerDecomposition& towers);

// {"transfer":{...},"M":"3/2"}
Json to_json(const CoboundaryCertificate& cert);
CoboundaryCertificate certificate_from_json(const Json& j);

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

} // namespace cocycle

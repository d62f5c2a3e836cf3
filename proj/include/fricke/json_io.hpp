#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "fricke/bq.hpp"
#include "fricke/bundle.hpp"
#include "fricke/ends.hpp"
#include "fricke/identity.hpp"

namespace fricke {

using json = nlohmann::ordered_json;

// "3", "-2.5", "3i", "-i", "1.5-0.25i", "1e-3+2i"
cplx parse_complex(std::string_view text);
// three comma separated complex numbers
TraceTriple parse_triple(std::string_view text);
// accepts "3,3,3", [x, y, z] or {"x":..,"y":..,"z":..}; each coordinate a number,
// a [re, im] pair or a string
TraceTriple triple_from_json(const json& j);

// shortest round-trip decimal
std::string format_double(double v);

json to_json(const cplx& z);
json to_json(const Slope& s);
json to_json(const TraceTriple& t);
json to_json(const Character& c);
json to_json(const BqVerdict& v);
json to_json(const SeriesReport& r, bool with_layers = false);
json to_json(const FareyInterval& iv);
json to_json(const EndInvariantReport& r, bool with_intervals = true);
json to_json(const ConjugatorReport& r);
json to_json(const BundleReport& r);

}  // namespace fricke

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcf/bounds.hpp"
#include "mcf/expansion.hpp"
#include "mcf/periodic_cubic.hpp"
#include "mcf/real_value.hpp"
#include "mcf/transcendence.hpp"

namespace mcf {

// Every integer and rational crosses the JSON boundary as a decimal string.
using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);

/// A real number in one of these forms:
///   "7/5", "-3", "1.25"                       exact rational
///   {"rational": "7/5"}
///   {"decimal": "1.2599210498948731647672"}   oracle over the truncations
///   {"algebraic": {"minpoly": ["-2","0","0","1"], "lo": "1", "hi": "2",
///                  "coords": ["0","1"]}}
/// minpoly lists coefficients from the constant term up and must be
/// irreducible; (lo, hi) isolates the root r. coords are the element's
/// coordinates in the basis 1, r, r^2, ... and default to r itself.
/// Algebraic values given with identical minpoly and interval share one field.
std::vector<RealValue> parse_inputs(const Json& j);
RealValue parse_real(const Json& j);

/// {"m": 2, "sequences": [["1","2"], ["0","1"]]}; "m" is optional.
PartialQuotients parse_pq(const Json& j);
Json pq_to_json(const PartialQuotients& pq);

/// [{"n": "1", "r": "2", "lambda": "3"}, ...]
std::vector<ScheduleEntry> parse_schedule(const Json& j);
/// ["cycle:2", "const:1"], one rule per sequence.
std::vector<EntryRule> parse_rules(const Json& j, std::uint64_t seed);

Json to_json(const AdmissibilityReport& r);
Json to_json(const BoundReport& r);
Json to_json(const GrowthReport& r);
Json to_json(const CriterionReport& r);
Json to_json(const CubicCertificate& c);
Json to_json(const RationalInterval& iv);

}  // namespace mcf

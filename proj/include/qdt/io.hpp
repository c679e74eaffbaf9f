#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qdt/census.hpp"
#include "qdt/dt.hpp"

namespace qdt::io {

// Insertion-ordered so that emitted reports are byte-for-byte reproducible.
using Json = nlohmann::ordered_json;

// Parse errors are rethrown as InvalidInput naming the file.
Json read_json_file(const std::filesystem::path& path);
std::string dump(const Json& j);

std::string rational_string(const Rational& r);
Rational parse_rational(const std::string& text);

// {"vertices": [...], "arrows": [{"label", "src", "tgt"}]}
Quiver quiver_from_json(const Json& j);
Json to_json(const Quiver& q);

// {"re": {"<vertex>": "p/q"}}; every vertex must be present.
StabilityCondition stability_from_json(const Json& j, const Quiver& q);
Json to_json(const StabilityCondition& z, const Quiver& q);

// {"clauses": [{"cycle": [...], "kind": "nilpotent"|"invertible"}],
//  "nilpotent_module": bool (optional)}
SerreConstraint constraint_from_json(const Json& j);
Json to_json(const SerreConstraint& s);

// Exponent of u -> coefficient string.
LaurentPoly poly_from_json(const Json& j);
Json to_json(const LaurentPoly& p);
// Exponent of q -> coefficient string; throws on odd powers of u.
LaurentPoly q_poly_from_json(const Json& j);
Json to_q_json(const LaurentPoly& p);

// {"variables", "order", "terms": [{"dim", "num", "den"}]}
TruncSeries series_from_json(const Json& j);
Json to_json(const TruncSeries& s);

// {"quiver", "constraint", "order", "laurent", "entries": {"1,1": {q_exp: c}},
//  "provenance": {"1,1": "oracle"}}. A string "quiver" or "constraint" is a
// file path relative to `base`.
KacTable kac_table_from_json(const Json& j, const std::filesystem::path& base = {});
Json to_json(const KacTable& k);

Json to_json(const CensusReport& r);
Json to_json(const WallcrossReport& r);

}  // namespace qdt::io

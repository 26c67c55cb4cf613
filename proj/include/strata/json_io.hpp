#pragma once

#include "strata/pcone.hpp"
#include "strata/polycone.hpp"

#include <json.hpp>

namespace strata {

using Json = nlohmann::ordered_json;

Json vec_to_json(const Vec& v);
Json matrix_to_json(const Matrix& m);
Vec vec_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

Json index_set_to_json(const IndexSet& s);

/// {n, hrep, rays, lineality}; integers as decimal strings.
Json to_json(const PolyCone& cone);
/// Rebuilds the cone from "hrep" (read as inequalities).
PolyCone polycone_from_json(const Json& j);

/// {n, R, S, p, blocks?}
Json to_json(const StratumContext& ctx);
/// {n, R, S, p, expressions:[{d, T}], hrep, rays, lineality}
Json to_json(const PCone& cone);

}  // namespace strata

#include "strata/json_io.hpp"

#include <stdexcept>

namespace strata {

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(x.str());
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (const Vec& row : m) out.push_back(vec_to_json(row));
  return out;
}

Vec vec_from_json(const Json& j) {
  Vec out;
  for (const Json& x : j) {
    if (x.is_string()) {
      out.emplace_back(x.get<std::string>());
    } else if (x.is_number_integer()) {
      out.emplace_back(x.get<long long>());
    } else {
      throw std::invalid_argument("expected an integer or decimal string");
    }
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  Matrix out;
  for (const Json& row : j) out.push_back(vec_from_json(row));
  return out;
}

Json index_set_to_json(const IndexSet& s) {
  Json out = Json::array();
  for (int m : s.members()) out.push_back(m);
  return out;
}

Json to_json(const PolyCone& cone) {
  Json out;
  out["n"] = cone.ambient_dim();
  out["hrep"] = matrix_to_json(cone.hrep());
  out["rays"] = matrix_to_json(cone.rays());
  out["lineality"] = matrix_to_json(cone.lineality());
  return out;
}

PolyCone polycone_from_json(const Json& j) {
  return PolyCone::from_hrep(j.at("n").get<int>(), matrix_from_json(j.at("hrep")));
}

Json to_json(const StratumContext& ctx) {
  Json out;
  out["n"] = ctx.n;
  out["R"] = index_set_to_json(ctx.R);
  out["S"] = index_set_to_json(ctx.S);
  out["p"] = ctx.p.str();
  if (ctx.composite()) out["blocks"] = ctx.blocks;
  return out;
}

Json to_json(const PCone& cone) {
  Json out = to_json(cone.ctx);
  Json exprs = Json::array();
  for (const PExpression& e : cone.expressions) {
    Json ej;
    ej["d"] = e.d;
    ej["T"] = index_set_to_json(e.T);
    exprs.push_back(ej);
  }
  out["expressions"] = exprs;
  const PolyCone realized = cone.realize();
  out["hrep"] = matrix_to_json(realized.hrep());
  out["rays"] = matrix_to_json(realized.rays());
  out["lineality"] = matrix_to_json(realized.lineality());
  return out;
}

}  // namespace strata

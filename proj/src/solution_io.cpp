#include "geopack/solution_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geopack {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vec2_array(const std::vector<Vec2>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : v) arr.push_back(ordered_json::array({p.x, p.y}));
  return arr;
}

std::vector<Vec2> vec2_from(const ordered_json& arr, int n) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    throw SchemaError("solution: bad center array");
  std::vector<Vec2> out;
  out.reserve(n);
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2)
      throw SchemaError("solution: center is not an [x, y] pair");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

ordered_json variables_json(const ModelSpec& spec, const AnyConfig& config) {
  ordered_json v;
  switch (spec.family) {
    case Family::minmax: {
      const auto& pc = std::get<PointConfig>(config);
      ordered_json coords = ordered_json::array();
      for (int i = 0; i < pc.n; ++i) {
        ordered_json pt = ordered_json::array();
        for (int k = 0; k < pc.d; ++k) pt.push_back(pc.at(i, k));
        coords.push_back(std::move(pt));
      }
      v["coords"] = std::move(coords);
      v["t_min"] = pc.t_min;
      v["t_max"] = pc.t_max;
      break;
    }
    case Family::circles: {
      const auto& cc = std::get<CircleConfig>(config);
      v["centers"] = vec2_array(cc.centers);
      v["radii"] = cc.radii;
      v["alpha"] = cc.alpha;
      break;
    }
    case Family::hexagons: {
      const auto& hc = std::get<HexConfig>(config);
      v["R"] = hc.R;
      v["centers"] = vec2_array(hc.centers);
      v["thetas"] = hc.thetas;
      ordered_json farkas = ordered_json::array();
      for (const auto& lam : hc.farkas) {
        ordered_json block = ordered_json::array();
        for (const double l : lam) block.push_back(l);
        farkas.push_back(std::move(block));
      }
      v["farkas"] = std::move(farkas);
      break;
    }
  }
  return v;
}

AnyConfig variables_from(const ModelSpec& spec, const ordered_json& v) {
  switch (spec.family) {
    case Family::minmax: {
      PointConfig pc;
      pc.n = spec.n;
      pc.d = spec.d;
      const auto& coords = v.at("coords");
      if (!coords.is_array() || static_cast<int>(coords.size()) != spec.n)
        throw SchemaError("solution: bad coords array");
      for (const auto& pt : coords) {
        if (!pt.is_array() || static_cast<int>(pt.size()) != spec.d)
          throw SchemaError("solution: point dimension mismatch");
        for (const auto& c : pt) pc.coords.push_back(c.get<double>());
      }
      pc.t_min = v.at("t_min").get<double>();
      pc.t_max = v.at("t_max").get<double>();
      return pc;
    }
    case Family::circles: {
      CircleConfig cc;
      cc.variant = spec.variant;
      cc.n = spec.n;
      cc.centers = vec2_from(v.at("centers"), spec.n);
      cc.radii = v.at("radii").get<std::vector<double>>();
      if (static_cast<int>(cc.radii.size()) != spec.n)
        throw SchemaError("solution: bad radii array");
      cc.alpha = v.at("alpha").get<double>();
      return cc;
    }
    case Family::hexagons: {
      HexConfig hc;
      hc.n = spec.n;
      hc.R = v.at("R").get<double>();
      hc.centers = vec2_from(v.at("centers"), spec.n);
      hc.thetas = v.at("thetas").get<std::vector<double>>();
      if (static_cast<int>(hc.thetas.size()) != spec.n)
        throw SchemaError("solution: bad thetas array");
      const auto& farkas = v.at("farkas");
      if (!farkas.is_array() ||
          static_cast<int>(farkas.size()) != num_pairs(spec.n))
        throw SchemaError("solution: bad farkas array");
      for (const auto& block : farkas) {
        if (!block.is_array() || block.size() != 12)
          throw SchemaError("solution: farkas block is not 12 multipliers");
        std::array<double, 12> lam{};
        for (int k = 0; k < 12; ++k) lam[k] = block[k].get<double>();
        hc.farkas.push_back(lam);
      }
      return hc;
    }
  }
  throw SchemaError("solution: unknown family");
}

}  // namespace

std::string solution_to_json(const SolutionFile& sol) {
  ordered_json o;
  o["schema_version"] = sol.schema_version;
  o["family"] = family_name(sol.spec.family);
  ordered_json params;
  params["n"] = sol.spec.n;
  if (sol.spec.family == Family::minmax) {
    params["d"] = sol.spec.d;
    params["formulation"] = form_name(sol.spec.form);
  }
  if (sol.spec.family == Family::circles)
    params["variant"] = variant_name(sol.spec.variant);
  o["params"] = std::move(params);
  o["variables"] = variables_json(sol.spec, sol.config);
  o["certified_objective"] = sol.certified_objective;
  o["reported_value"] = sol.reported_value;
  ordered_json meta;
  meta["seed"] = sol.meta.seed;
  meta["restarts"] = sol.meta.restarts;
  meta["wall_time"] = sol.meta.wall_time;
  meta["tool_version"] = sol.meta.tool_version;
  o["solver"] = std::move(meta);
  return o.dump(2) + "\n";
}

SolutionFile solution_from_json(const std::string& text) {
  ordered_json o;
  try {
    o = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("solution: parse error: ") + e.what());
  }
  try {
    SolutionFile sol;
    sol.schema_version = o.at("schema_version").get<int>();
    if (sol.schema_version != kSolutionSchemaVersion)
      throw SchemaError("solution: unsupported schema_version");
    const std::string fam = o.at("family").get<std::string>();
    if (fam == "minmax")
      sol.spec.family = Family::minmax;
    else if (fam == "circles")
      sol.spec.family = Family::circles;
    else if (fam == "hexagons")
      sol.spec.family = Family::hexagons;
    else
      throw SchemaError("solution: unknown family '" + fam + "'");
    const auto& params = o.at("params");
    sol.spec.n = params.at("n").get<int>();
    if (sol.spec.family == Family::minmax) {
      sol.spec.d = params.at("d").get<int>();
      const std::string form = params.value("formulation", "primal");
      if (form == "primal")
        sol.spec.form = MinMaxForm::primal;
      else if (form == "dual")
        sol.spec.form = MinMaxForm::dual;
      else
        throw SchemaError("solution: unknown formulation '" + form + "'");
    }
    if (sol.spec.family == Family::circles) {
      const std::string variant = params.at("variant").get<std::string>();
      if (variant == "square")
        sol.spec.variant = RectVariant::square;
      else if (variant == "rectangle")
        sol.spec.variant = RectVariant::rectangle;
      else
        throw SchemaError("solution: unknown variant '" + variant + "'");
    }
    sol.config = variables_from(sol.spec, o.at("variables"));
    sol.certified_objective = o.at("certified_objective").get<double>();
    sol.reported_value = o.at("reported_value").get<std::string>();
    if (o.contains("solver")) {
      const auto& meta = o.at("solver");
      sol.meta.seed = meta.value("seed", std::uint64_t{0});
      sol.meta.restarts = meta.value("restarts", 0);
      sol.meta.wall_time = meta.value("wall_time", 0.0);
      sol.meta.tool_version = meta.value("tool_version", std::string());
    }
    return sol;
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("solution: schema error: ") + e.what());
  }
}

void save_solution(const SolutionFile& sol, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("solution: cannot write " + path);
  out << solution_to_json(sol);
}

SolutionFile load_solution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("solution: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return solution_from_json(ss.str());
}

}  // namespace geopack

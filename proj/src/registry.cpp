#include "geopack/registry.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace geopack {
namespace {

using ordered_json = nlohmann::ordered_json;

double parse_decimal(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::runtime_error("registry: bad decimal string '" + s + "'");
  return v;
}

RegistryEntry row(Family family, RectVariant variant, int n, int d,
                  const char* best, const char* prev, const char* source,
                  Sense sense) {
  return {family, variant, n, d, best, prev, source, sense};
}

std::string sense_name(Sense sense) {
  return sense == Sense::minimize ? "min" : "max";
}

Sense sense_from(const std::string& s) {
  if (s == "min") return Sense::minimize;
  if (s == "max") return Sense::maximize;
  throw std::runtime_error("registry: unknown sense '" + s + "'");
}

Family family_from(const std::string& s) {
  if (s == "minmax") return Family::minmax;
  if (s == "circles") return Family::circles;
  if (s == "hexagons") return Family::hexagons;
  throw std::runtime_error("registry: unknown family '" + s + "'");
}

RectVariant variant_from(const std::string& s) {
  if (s == "square") return RectVariant::square;
  if (s == "rectangle") return RectVariant::rectangle;
  throw std::runtime_error("registry: unknown variant '" + s + "'");
}

void check_entry(const RegistryEntry& e) {
  const double best = parse_decimal(e.best_value);
  const double prev = parse_decimal(e.previous_best);
  const bool ok = e.sense == Sense::minimize ? best <= prev : best >= prev;
  if (!ok)
    throw std::runtime_error("registry: best_value worse than previous_best");
}

}  // namespace

std::string status_name(CompareStatus status) {
  switch (status) {
    case CompareStatus::matched:
      return "matched";
    case CompareStatus::improved:
      return "improved";
    case CompareStatus::worse:
      return "worse";
    case CompareStatus::novel:
      return "new";
  }
  return "?";
}

Registry builtin_registry() {
  constexpr auto mm = Family::minmax;
  constexpr auto ci = Family::circles;
  constexpr auto hx = Family::hexagons;
  constexpr auto sq = RectVariant::square;
  constexpr auto re = RectVariant::rectangle;
  constexpr auto mn = Sense::minimize;
  constexpr auto mx = Sense::maximize;
  Registry r;
  r.entries = {
      row(mm, sq, 16, 2, "12.88924", "12.88927", "alphaevolve", mn),
      row(mm, sq, 21, 2, "17.77499", "17.776", "friedman-packing", mn),
      row(mm, sq, 22, 2, "19.05398", "19.055", "friedman-packing", mn),
      row(mm, sq, 29, 2, "25.92460", "25.929", "audet2010", mn),
      row(mm, sq, 14, 3, "4.16578", "4.16585", "alphaevolve", mn),
      row(ci, sq, 32, 0, "2.93957", "2.93794", "alphaevolve", mx),
      row(ci, re, 26, 0, "2.63930", "2.638", "friedman-packing", mx),
      row(ci, re, 27, 0, "2.69015", "2.687", "friedman-packing", mx),
      row(hx, sq, 11, 0, "3.92485", "3.93010", "alphaevolve", mn),
      row(hx, sq, 12, 0, "3.94165", "3.94192", "alphaevolve", mn),
      row(hx, sq, 14, 0, "4.26900", "4.27240", "friedman2015", mn),
      row(hx, sq, 15, 0, "4.44769", "4.45406", "friedman2015", mn),
      row(hx, sq, 16, 0, "4.52788", "4.53633", "friedman2015", mn),
  };
  return r;
}

const RegistryEntry* lookup(const Registry& registry, const ModelSpec& spec) {
  for (const auto& e : registry.entries) {
    if (e.family != spec.family || e.n != spec.n) continue;
    if (spec.family == Family::minmax && e.d != spec.d) continue;
    if (spec.family == Family::circles && e.variant != spec.variant) continue;
    return &e;
  }
  return nullptr;
}

ComparisonRow compare(const Verdict& verdict, const ModelSpec& spec,
                      const Registry& registry) {
  if (!verdict.feasible)
    throw std::invalid_argument("compare: verdict is infeasible");
  if (verdict.reported_value.empty())
    throw std::invalid_argument("compare: verdict has no reported value");

  ComparisonRow rowr;
  rowr.family = spec.family;
  rowr.variant = spec.variant;
  rowr.n = spec.n;
  rowr.d = spec.family == Family::minmax ? spec.d : 0;
  rowr.our_value = verdict.reported_value;

  const RegistryEntry* entry = lookup(registry, spec);
  if (entry == nullptr) {
    rowr.status = CompareStatus::novel;
    rowr.relative_gap = std::numeric_limits<double>::quiet_NaN();
    return rowr;
  }

  rowr.best_value = entry->best_value;
  const double ours = parse_decimal(rowr.our_value);
  const double best = parse_decimal(entry->best_value);
  rowr.relative_gap = (ours - best) / std::abs(best);
  if (rowr.our_value == entry->best_value || ours == best) {
    rowr.status = CompareStatus::matched;
  } else if (entry->sense == Sense::minimize ? ours < best : ours > best) {
    rowr.status = CompareStatus::improved;
  } else {
    rowr.status = CompareStatus::worse;
  }
  return rowr;
}

std::string registry_to_json(const Registry& registry) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : registry.entries) {
    ordered_json o;
    o["family"] = family_name(e.family);
    if (e.family == Family::circles) o["variant"] = variant_name(e.variant);
    o["n"] = e.n;
    if (e.family == Family::minmax) o["d"] = e.d;
    o["best_value"] = e.best_value;
    o["previous_best"] = e.previous_best;
    o["source"] = e.source;
    o["sense"] = sense_name(e.sense);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

Registry registry_from_json(const std::string& text) {
  ordered_json arr;
  try {
    arr = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("registry: parse error: ") + e.what());
  }
  if (!arr.is_array()) throw std::runtime_error("registry: expected an array");
  Registry r;
  for (const auto& o : arr) {
    RegistryEntry e;
    e.family = family_from(o.at("family").get<std::string>());
    if (o.contains("variant"))
      e.variant = variant_from(o.at("variant").get<std::string>());
    e.n = o.at("n").get<int>();
    if (o.contains("d")) e.d = o.at("d").get<int>();
    e.best_value = o.at("best_value").get<std::string>();
    e.previous_best = o.at("previous_best").get<std::string>();
    e.source = o.value("source", std::string());
    e.sense = sense_from(o.at("sense").get<std::string>());
    check_entry(e);
    r.entries.push_back(std::move(e));
  }
  return r;
}

void save_registry(const Registry& registry, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("registry: cannot write " + path);
  out << registry_to_json(registry);
}

Registry load_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("registry: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return registry_from_json(ss.str());
}

}  // namespace geopack

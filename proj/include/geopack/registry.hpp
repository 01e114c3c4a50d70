#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geopack/models.hpp"
#include "geopack/nlp.hpp"
#include "geopack/validator.hpp"

namespace geopack {

// One best-known-value row. Values are decimal strings, never floats: the
// 5-decimal printed form is the unit of comparison. previous_best keeps the
// precision of its source (the rectangle rows have only three decimals).
struct RegistryEntry {
  Family family = Family::minmax;
  RectVariant variant = RectVariant::square;  // circles only
  int n = 0;
  int d = 0;  // minmax only
  std::string best_value;
  std::string previous_best;
  std::string source;
  Sense sense = Sense::minimize;
};

struct Registry {
  std::vector<RegistryEntry> entries;
};

enum class CompareStatus { matched, improved, worse, novel };

std::string status_name(CompareStatus status);  // novel prints "new"

struct ComparisonRow {
  Family family = Family::minmax;
  RectVariant variant = RectVariant::square;
  int n = 0;
  int d = 0;
  std::string our_value;
  std::string best_value;              // empty when novel
  double relative_gap = 0.0;           // NaN when novel
  CompareStatus status = CompareStatus::novel;
};

// All rows of the paper's three result tables.
Registry builtin_registry();

const RegistryEntry* lookup(const Registry& registry, const ModelSpec& spec);

// Decimal-string comparison at 5 decimals under the family's sense;
// relative_gap = (ours - best) / |best|, so negative means better for
// minimization and worse for maximization. Throws on infeasible verdicts.
ComparisonRow compare(const Verdict& verdict, const ModelSpec& spec,
                      const Registry& registry);

// JSON array serialization; save(load(save(x))) is byte-identical to save(x).
std::string registry_to_json(const Registry& registry);
Registry registry_from_json(const std::string& text);
void save_registry(const Registry& registry, const std::string& path);
Registry load_registry(const std::string& path);

}  // namespace geopack

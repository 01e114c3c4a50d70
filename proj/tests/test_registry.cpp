#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "geopack/registry.hpp"
#include "geopack/validator.hpp"

using namespace geopack;

namespace {

ModelSpec spec_of(Family fam, int n, int d = 2,
                  RectVariant variant = RectVariant::square) {
  ModelSpec s;
  s.family = fam;
  s.n = n;
  s.d = d;
  s.variant = variant;
  return s;
}

Verdict feasible_verdict(Sense sense, double value) {
  Verdict v;
  v.feasible = true;
  v.certified_objective = value;
  v.reported_value = report_value(sense, value);
  return v;
}

}  // namespace

TEST_CASE("builtin registry carries the full result tables") {
  const Registry reg = builtin_registry();
  CHECK(reg.entries.size() == 13);

  const RegistryEntry* mm21 = lookup(reg, spec_of(Family::minmax, 21));
  REQUIRE(mm21 != nullptr);
  CHECK(mm21->best_value == "17.77499");
  CHECK(mm21->previous_best == "17.776");
  CHECK(mm21->source == "friedman-packing");
  CHECK(mm21->sense == Sense::minimize);

  const RegistryEntry* mm14_3d = lookup(reg, spec_of(Family::minmax, 14, 3));
  REQUIRE(mm14_3d != nullptr);
  CHECK(mm14_3d->best_value == "4.16578");

  const RegistryEntry* re27 =
      lookup(reg, spec_of(Family::circles, 27, 2, RectVariant::rectangle));
  REQUIRE(re27 != nullptr);
  CHECK(re27->best_value == "2.69015");
  CHECK(re27->previous_best == "2.687");
  CHECK(re27->sense == Sense::maximize);

  const RegistryEntry* hex15 = lookup(reg, spec_of(Family::hexagons, 15));
  REQUIRE(hex15 != nullptr);
  CHECK(hex15->best_value == "4.44769");
  CHECK(hex15->previous_best == "4.45406");

  // Square and rectangle rows are distinct keys.
  CHECK(lookup(reg, spec_of(Family::circles, 32)) != nullptr);
  CHECK(lookup(reg, spec_of(Family::circles, 32, 2, RectVariant::rectangle)) ==
        nullptr);
  CHECK(lookup(reg, spec_of(Family::minmax, 99)) == nullptr);
}

TEST_CASE("compare: matched, improved, worse, novel") {
  const Registry reg = builtin_registry();

  const ComparisonRow matched =
      compare(feasible_verdict(Sense::minimize, 12.889235),
              spec_of(Family::minmax, 16), reg);
  CHECK(matched.our_value == "12.88924");
  CHECK(matched.best_value == "12.88924");
  CHECK(matched.status == CompareStatus::matched);
  CHECK(matched.relative_gap == 0.0);

  const ComparisonRow improved =
      compare(feasible_verdict(Sense::maximize, 2.9500001),
              spec_of(Family::circles, 32), reg);
  CHECK(improved.our_value == "2.95000");
  CHECK(improved.status == CompareStatus::improved);
  CHECK(improved.relative_gap > 0.0);

  const ComparisonRow worse =
      compare(feasible_verdict(Sense::maximize, 2.80000004),
              spec_of(Family::circles, 32), reg);
  CHECK(worse.status == CompareStatus::worse);
  CHECK(worse.relative_gap < 0.0);

  const ComparisonRow novel = compare(feasible_verdict(Sense::minimize, 4.0),
                                      spec_of(Family::hexagons, 13), reg);
  CHECK(novel.our_value == "4.00000");
  CHECK(novel.best_value.empty());
  CHECK(novel.status == CompareStatus::novel);
  CHECK(std::isnan(novel.relative_gap));
  CHECK(status_name(CompareStatus::novel) == "new");
  CHECK(status_name(CompareStatus::matched) == "matched");

  const ComparisonRow hex_min =
      compare(feasible_verdict(Sense::minimize, 3.90000003),
              spec_of(Family::hexagons, 11), reg);
  CHECK(hex_min.status == CompareStatus::improved);
  CHECK(hex_min.relative_gap < 0.0);  // smaller is better, gap stays signed
}

TEST_CASE("compare refuses infeasible verdicts") {
  const Registry reg = builtin_registry();
  Verdict bad;
  bad.feasible = false;
  CHECK_THROWS_AS(compare(bad, spec_of(Family::minmax, 16), reg),
                  std::invalid_argument);
  Verdict empty;
  empty.feasible = true;
  CHECK_THROWS_AS(compare(empty, spec_of(Family::minmax, 16), reg),
                  std::invalid_argument);
}

TEST_CASE("registry JSON round-trips byte-identically") {
  const Registry reg = builtin_registry();
  const std::string once = registry_to_json(reg);
  const Registry back = registry_from_json(once);
  CHECK(registry_to_json(back) == once);
  CHECK(back.entries.size() == reg.entries.size());
  for (size_t i = 0; i < reg.entries.size(); ++i) {
    CHECK(back.entries[i].best_value == reg.entries[i].best_value);
    CHECK(back.entries[i].previous_best == reg.entries[i].previous_best);
    CHECK(back.entries[i].source == reg.entries[i].source);
    CHECK(back.entries[i].n == reg.entries[i].n);
  }

  const std::string path = "registry_roundtrip_test.json";
  save_registry(reg, path);
  const Registry loaded = load_registry(path);
  CHECK(registry_to_json(loaded) == once);
  std::remove(path.c_str());
}

TEST_CASE("registry load enforces the improvement invariant") {
  Registry reg = builtin_registry();
  // A minimization row claiming a best worse than its previous best.
  for (auto& e : reg.entries)
    if (e.family == Family::minmax && e.n == 16) e.best_value = "12.89000";
  bool threw = false;
  try {
    registry_from_json(registry_to_json(reg));
  } catch (const std::exception& e) {
    threw = true;
    CHECK(std::string(e.what()).find("worse than previous_best") !=
          std::string::npos);
  }
  CHECK(threw);

  CHECK_THROWS(registry_from_json("{not json"));
}

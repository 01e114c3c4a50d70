#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "geopack/geometry.hpp"
#include "geopack/models.hpp"
#include "geopack/nlp.hpp"
#include "geopack/rng.hpp"

using namespace geopack;

namespace {

// Two edge-to-edge hexagons at separation sqrt(3) + 0.1 along the side-1
// normal (apothem, 1/2), theta = 0, with the one-sided-per-hexagon Farkas
// certificate lam_A[4] = lam_B[1] = 1/2. Every multiplier row is exact in the
// builder's table arithmetic.
HexConfig two_hex_witness() {
  const double s = std::sqrt(3.0) + 0.1;
  HexConfig hc;
  hc.n = 2;
  hc.R = 2.5;
  hc.centers = {{-0.5 * s * kHexApothem, -0.25 * s},
                {0.5 * s * kHexApothem, 0.25 * s}};
  hc.thetas = {0.0, 0.0};
  std::array<double, 12> lam{};
  lam[4] = 0.5;
  lam[7] = 0.5;  // side 1 of hexagon B
  hc.farkas = {lam};
  return hc;
}

PointConfig unit_grid4() {
  PointConfig pc;
  pc.n = 4;
  pc.d = 2;
  pc.coords = {0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0};
  pc.t_min = 1.0;
  pc.t_max = 2.0;
  return pc;
}

}  // namespace

TEST_CASE("variable and constraint counts match the documented formulas") {
  // Paper-quoted sizes.
  CHECK(build_minmax_primal(3, 2).num_vars() == 7);
  CHECK(build_minmax_primal(3, 2).num_constraints() == 6);
  CHECK(build_minmax_primal(30, 3).num_vars() == 91);
  CHECK(hexagons_num_vars(2, HexFormulation::full) == 55);

  for (int n = 2; n <= 40; ++n) {
    for (int d : {1, 2, 3}) {
      const NlpProblem p = build_minmax_primal(n, d);
      CHECK(p.num_vars() == minmax_num_vars(n, d));
      CHECK(p.num_vars() == n * d + 1);
      CHECK(p.num_constraints() == minmax_num_constraints(n));
      CHECK(p.num_constraints() == n * (n - 1));
    }
  }
  for (int n = 1; n <= 40; ++n) {
    const NlpProblem p = build_circles(n, RectVariant::rectangle);
    CHECK(p.num_vars() == 3 * n + 1);
    CHECK(p.num_constraints() == 5 * n + num_pairs(n));
  }
  for (int n = 1; n <= 40; ++n) {
    for (const auto form : {HexFormulation::full, HexFormulation::reduced}) {
      const NlpProblem p = build_hexagons(n, form);
      CHECK(p.num_vars() == hexagons_num_vars(n, form));
      CHECK(p.num_constraints() == hexagons_num_constraints(n, form));
    }
    CHECK(hexagons_num_constraints(n, HexFormulation::full) ==
          54 * n + 4 * num_pairs(n));
    CHECK(hexagons_num_constraints(n, HexFormulation::reduced) ==
          36 * n + 4 * num_pairs(n));
  }
}

TEST_CASE("builders reject degenerate sizes") {
  CHECK_THROWS_AS(build_minmax_primal(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_minmax_dual(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_circles(0, RectVariant::square),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_hexagons(0), std::invalid_argument);
}

TEST_CASE("boxes implement the formulation choices") {
  const NlpProblem primal = build_minmax_primal(3, 2);
  CHECK(primal.lower()[6] == 1.0);  // t_max >= 1
  const NlpProblem dual = build_minmax_dual(3, 2);
  CHECK(dual.lower()[6] == 0.0);
  CHECK(dual.upper()[6] == 1.0);

  const NlpProblem sq = build_circles(2, RectVariant::square);
  CHECK(sq.lower()[6] == 1.0);  // alpha pinned by its box
  CHECK(sq.upper()[6] == 1.0);
  const NlpProblem re = build_circles(2, RectVariant::rectangle);
  CHECK(re.lower()[6] == 1e-4);
  CHECK(re.upper()[6] == 1.0);

  const NlpProblem pinned = build_minmax_primal(3, 2, true);
  CHECK(pinned.lower()[0] == 0.0);
  CHECK(pinned.upper()[0] == 0.0);
  CHECK(pinned.lower()[1] == 0.0);
  CHECK(pinned.upper()[1] == 0.0);
  CHECK(pinned.num_vars() == 7);
  CHECK(pinned.num_constraints() == 6);

  const NlpProblem hex = build_hexagons(3);
  CHECK(hex.lower()[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(hex.lower()[1 + 2 * 3] == 0.0);  // theta(0)
  CHECK(hex.upper()[1 + 2 * 3] == doctest::Approx(kHexSector).epsilon(1e-15));
}

TEST_CASE("minmax codec: documented ordering and exact round-trip") {
  PointConfig pc;
  pc.n = 2;
  pc.d = 1;
  pc.coords = {0.0, 1.0};
  pc.t_max = 1.0;
  CHECK(encode_minmax(pc, MinMaxForm::primal) ==
        std::vector<double>{0.0, 1.0, 1.0});

  SplitMix64 rng(7);
  PointConfig r;
  r.n = 5;
  r.d = 3;
  for (int i = 0; i < 15; ++i) r.coords.push_back(rng.uniform(-3.0, 3.0));
  r.t_max = rng.uniform(1.0, 9.0);
  const auto x = encode_minmax(r, MinMaxForm::primal);
  const PointConfig back = decode_minmax(5, 3, MinMaxForm::primal, x);
  CHECK(back.coords == r.coords);
  CHECK(back.t_max == r.t_max);
  CHECK(back.t_min == 1.0);

  CHECK_THROWS_AS(decode_minmax(5, 3, MinMaxForm::primal,
                                std::vector<double>(7, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("circle codec: exact round-trip") {
  SplitMix64 rng(8);
  CircleConfig c;
  c.variant = RectVariant::rectangle;
  c.n = 6;
  for (int i = 0; i < 6; ++i) {
    c.centers.push_back({rng.next_double(), 2.0 * rng.next_double()});
    c.radii.push_back(0.5 * rng.next_double());
  }
  c.alpha = 0.9;
  const auto x = encode_circles(c);
  CHECK(static_cast<int>(x.size()) == circles_num_vars(6));
  const CircleConfig back = decode_circles(6, RectVariant::rectangle, x);
  CHECK(back.radii == c.radii);
  CHECK(back.alpha == c.alpha);
  for (int i = 0; i < 6; ++i) {
    CHECK(back.centers[i].x == c.centers[i].x);
    CHECK(back.centers[i].y == c.centers[i].y);
  }
}

TEST_CASE("hexagon codec: exact round-trip in both formulations") {
  SplitMix64 rng(9);
  HexConfig h;
  h.n = 3;
  h.R = 3.3;
  for (int i = 0; i < 3; ++i) {
    h.centers.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    h.thetas.push_back(rng.uniform(0.0, kHexSector));
  }
  for (int p = 0; p < 3; ++p) {
    std::array<double, 12> lam{};
    double sum = 0.0;
    for (auto& l : lam) sum += (l = rng.next_double());
    for (auto& l : lam) l /= sum;
    h.farkas.push_back(lam);
  }
  for (const auto form : {HexFormulation::full, HexFormulation::reduced}) {
    const auto x = encode_hexagons(h, form);
    CHECK(static_cast<int>(x.size()) == hexagons_num_vars(3, form));
    const HexConfig back = decode_hexagons(3, form, x);
    CHECK(back.R == h.R);
    CHECK(back.thetas == h.thetas);
    CHECK(back.farkas == h.farkas);
    for (int i = 0; i < 3; ++i) {
      CHECK(back.centers[i].x == h.centers[i].x);
      CHECK(back.centers[i].y == h.centers[i].y);
    }
  }
}

TEST_CASE("feasible-by-construction witnesses evaluate within 1e-12") {
  // Unit grid, four points: min squared distance 1, max 2.
  const PointConfig grid = unit_grid4();
  const NlpProblem mm = build_minmax_primal(4, 2);
  CHECK(evaluate(mm, encode_minmax(grid, MinMaxForm::primal)).max_violation <=
        1e-12);

  // Single inscribed circle.
  CircleConfig cc;
  cc.n = 1;
  cc.centers = {{0.5, 0.5}};
  cc.radii = {0.5};
  const NlpProblem ci = build_circles(1, RectVariant::square);
  CHECK(evaluate(ci, encode_circles(cc)).max_violation <= 1e-12);

  // Concentric unit hexagon, R = 1.
  HexConfig one;
  one.n = 1;
  one.R = 1.0;
  one.centers = {{0.0, 0.0}};
  one.thetas = {0.0};
  for (const auto form : {HexFormulation::full, HexFormulation::reduced}) {
    const NlpProblem hx = build_hexagons(1, form);
    CHECK(evaluate(hx, encode_hexagons(one, form)).max_violation <= 1e-12);
  }

  // Two hexagons with a hand-built Farkas certificate.
  const HexConfig pairw = two_hex_witness();
  for (const auto form : {HexFormulation::full, HexFormulation::reduced}) {
    const NlpProblem hx = build_hexagons(2, form);
    CHECK(evaluate(hx, encode_hexagons(pairw, form)).max_violation <= 1e-12);
  }
}

TEST_CASE("primal and dual transforms map feasible points both ways") {
  const PointConfig grid = unit_grid4();
  const PointConfig dual = primal_to_dual(grid);
  CHECK(dual.t_max == 1.0);
  CHECK(dual.t_min == 1.0 / grid.t_max);
  const NlpProblem dp = build_minmax_dual(4, 2);
  CHECK(evaluate(dp, encode_minmax(dual, MinMaxForm::dual)).max_violation <=
        1e-12);

  const PointConfig back = dual_to_primal(dual);
  CHECK(back.t_min == 1.0);
  CHECK(back.t_max == doctest::Approx(grid.t_max).epsilon(1e-14));
  const NlpProblem pp = build_minmax_primal(4, 2);
  CHECK(evaluate(pp, encode_minmax(back, MinMaxForm::primal)).max_violation <=
        1e-12);
}

TEST_CASE("full and reduced hexagon models agree at encoded points") {
  SplitMix64 rng(10);
  const int n = 3;
  const NlpProblem full = build_hexagons(n, HexFormulation::full);
  const NlpProblem reduced = build_hexagons(n, HexFormulation::reduced);
  const int contain = 36 * n;
  const int equalities = 18 * n;

  for (int trial = 0; trial < 20; ++trial) {
    HexConfig h;
    h.n = n;
    h.R = rng.uniform(std::sqrt(3.0), 2.0 * std::sqrt(3.0));
    for (int i = 0; i < n; ++i) {
      h.centers.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
      h.thetas.push_back(rng.uniform(0.0, kHexSector));
    }
    for (int p = 0; p < num_pairs(n); ++p) {
      std::array<double, 12> lam{};
      double sum = 0.0;
      for (auto& l : lam) sum += (l = rng.next_double());
      for (auto& l : lam) l /= sum;
      h.farkas.push_back(lam);
    }
    const auto xf = encode_hexagons(h, HexFormulation::full);
    const auto xr = encode_hexagons(h, HexFormulation::reduced);

    // The full form's defining equalities hold at encoded points.
    for (int k = contain; k < contain + equalities; ++k)
      CHECK(std::abs(full.constraint(k).func.value(xf)) <= 1e-12);

    // Containment rows are the same functions; Farkas rows differ only by
    // the analytic substitution of a, b, c.
    for (int k = 0; k < contain; ++k)
      CHECK(full.constraint(k).func.value(xf) ==
            reduced.constraint(k).func.value(xr));
    for (int q = 0; q < 4 * num_pairs(n); ++q) {
      const double vf =
          full.constraint(contain + equalities + q).func.value(xf);
      const double vr = reduced.constraint(contain + q).func.value(xr);
      CHECK(std::abs(vf - vr) <= 1e-12);
    }
  }
}

TEST_CASE("honeycomb sites: deterministic, correctly spaced, centered") {
  const auto a = honeycomb_sites(13, std::sqrt(3.0));
  const auto b = honeycomb_sites(13, std::sqrt(3.0));
  REQUIRE(a.size() == 13);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }

  double cx = 0.0, cy = 0.0, min_d = 1e30;
  for (const auto& s : a) {
    cx += s.x;
    cy += s.y;
  }
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      min_d = std::min(min_d, norm(a[i] - a[j]));
  CHECK(std::abs(cx) <= 1e-12);
  CHECK(std::abs(cy) <= 1e-12);
  CHECK(min_d == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  CHECK(honeycomb_sites(1, 2.0).size() == 1);
}

TEST_CASE("ModelSpec plumbing routes to the right builder and codec") {
  ModelSpec spec;
  spec.family = Family::hexagons;
  spec.n = 2;
  spec.hexform = HexFormulation::reduced;
  CHECK(objective_sense(spec) == Sense::minimize);
  const NlpProblem p = build(spec);
  CHECK(p.num_vars() == hexagons_num_vars(2, HexFormulation::reduced));

  const HexConfig h = two_hex_witness();
  const auto x = encode(spec, AnyConfig{h});
  const AnyConfig round = decode(spec, x);
  CHECK(std::get<HexConfig>(round).R == h.R);

  spec.family = Family::circles;
  CHECK(objective_sense(spec) == Sense::maximize);
  spec.family = Family::minmax;
  spec.form = MinMaxForm::dual;
  CHECK(objective_sense(spec) == Sense::maximize);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "geopack/models.hpp"
#include "geopack/nlp.hpp"

#include "fd_check.hpp"

using namespace geopack;

TEST_CASE("evaluate: two unit-separated points are feasible with objective 1") {
  const NlpProblem p = build_minmax_primal(2, 1);
  const std::vector<double> x = {0.0, 1.0, 1.0};
  const Evaluation ev = evaluate(p, x);
  CHECK(ev.objective_value == 1.0);
  CHECK(ev.max_violation == 0.0);
  REQUIRE(ev.constraint_values.size() == 2);
  CHECK(ev.constraint_values[0] == 0.0);  // min_dist tight
  CHECK(ev.constraint_values[1] == 0.0);  // max_dist tight
}

TEST_CASE("evaluate: squared distance 0.25 violates the min by 0.75") {
  const NlpProblem p = build_minmax_primal(2, 1);
  const std::vector<double> x = {0.0, 0.5, 1.0};
  const Evaluation ev = evaluate(p, x);
  CHECK(ev.max_violation == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ev.constraint_values[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p.constraint(0).label == "min_dist(0,1)");
}

TEST_CASE("evaluate: inscribed circle is feasible with objective 0.5") {
  const NlpProblem p = build_circles(1, RectVariant::square);
  const std::vector<double> x = {0.5, 0.5, 0.5, 1.0};
  const Evaluation ev = evaluate(p, x);
  CHECK(ev.objective_value == 0.5);
  CHECK(ev.max_violation == 0.0);
}

TEST_CASE("evaluate is pure and deterministic") {
  const NlpProblem p = build_circles(3, RectVariant::rectangle);
  const std::vector<double> x = {0.2, 0.3, 0.6, 0.9, 0.4, 1.4,
                                 0.1, 0.15, 0.2, 0.9};
  const Evaluation a = evaluate(p, x);
  const Evaluation b = evaluate(p, x);
  CHECK(a.objective_value == b.objective_value);
  CHECK(a.max_violation == b.max_violation);
  CHECK(a.constraint_values == b.constraint_values);
}

TEST_CASE("evaluate: dimension mismatch is a hard error") {
  const NlpProblem p = build_minmax_primal(2, 1);
  const std::vector<double> x = {0.0, 1.0};
  CHECK_THROWS_AS(evaluate(p, x), std::invalid_argument);
  CHECK_THROWS_AS(constraint_gradient(p, x, 0), std::invalid_argument);
}

TEST_CASE("evaluate: NaN diagnostics name the offending function") {
  SmoothFunction obj{[](std::span<const double> x) { return x[0]; },
                     [](std::span<const double>, std::vector<GradEntry>& g) {
                       g.push_back({0, 1.0});
                     }};
  SmoothFunction bad{
      [](std::span<const double> x) { return std::sqrt(x[0]); },
      [](std::span<const double> x, std::vector<GradEntry>& g) {
        g.push_back({0, 0.5 / std::sqrt(x[0])});
      }};
  NlpProblem p({-1.0}, {1.0}, Sense::minimize, obj,
               {{ConstraintKind::inequality, bad, "min_dist(0,1)"}});
  const std::vector<double> x = {-0.5};
  try {
    evaluate(p, x);
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("min_dist(0,1)") != std::string::npos);
  }
}

TEST_CASE("gradient: objective is the unit vector on t_max") {
  const NlpProblem p = build_minmax_primal(3, 2);
  const std::vector<double> x = {0.1, 0.2, 0.7, -0.3, 0.4, 1.1, 2.0};
  const std::vector<double> g = objective_gradient(p, x);
  for (int i = 0; i < 6; ++i) CHECK(g[i] == 0.0);
  CHECK(g[6] == 1.0);
}

TEST_CASE("gradient: pairwise squared-distance entries are +-2 at unit offset") {
  const NlpProblem p = build_minmax_primal(2, 2);
  const std::vector<double> x = {0.0, 0.0, 1.0, 0.0, 1.5};
  // min_dist(0,1): g = floor - |xi - xj|^2.
  const std::vector<double> g_min = constraint_gradient(p, x, 0);
  CHECK(g_min == std::vector<double>{2.0, 0.0, -2.0, 0.0, 0.0});
  // max_dist(0,1): g = |xi - xj|^2 - t_max.
  const std::vector<double> g_max = constraint_gradient(p, x, 1);
  CHECK(g_max == std::vector<double>{-2.0, 0.0, 2.0, 0.0, -1.0});
}

TEST_CASE("canonicalization: satisfying the printed >= form gives g <= 0") {
  const NlpProblem p = build_minmax_primal(2, 1);
  const std::vector<double> x = {0.0, 1.2, 2.0};  // distance 1.2 >= 1
  const Evaluation ev = evaluate(p, x);
  CHECK(ev.constraint_values[0] <= 0.0);
  CHECK(ev.constraint_values[1] <= 0.0);
}

TEST_CASE("gradients match central finite differences on every family") {
  using testing::fd_sweep;
  CHECK(fd_sweep(build_minmax_primal(4, 2), 11, 10) < 1e-5);
  CHECK(fd_sweep(build_minmax_dual(3, 3), 12, 10) < 1e-5);
  CHECK(fd_sweep(build_circles(4, RectVariant::square), 13, 10) < 1e-5);
  CHECK(fd_sweep(build_circles(3, RectVariant::rectangle), 14, 10) < 1e-5);
  CHECK(fd_sweep(build_hexagons(2, HexFormulation::full), 15, 10) < 1e-5);
  CHECK(fd_sweep(build_hexagons(3, HexFormulation::reduced), 16, 10) < 1e-5);
}

TEST_CASE("box violations count toward max_violation") {
  const NlpProblem p = build_minmax_primal(2, 1);
  // All functional constraints hold; only the t_max box (upper bound 16) is
  // violated.
  const std::vector<double> x = {0.0, 1.0, 40.0};
  const Evaluation ev = evaluate(p, x);
  CHECK(ev.constraint_values[0] <= 0.0);
  CHECK(ev.constraint_values[1] <= 0.0);
  CHECK(ev.max_violation == doctest::Approx(24.0).epsilon(1e-15));
}

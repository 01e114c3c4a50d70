#include <doctest.h>

#include <cmath>
#include <vector>

#include "geopack/models.hpp"
#include "geopack/nlp.hpp"
#include "geopack/solver.hpp"
#include "geopack/validator.hpp"

using namespace geopack;

namespace {

ModelSpec spec_of(Family fam, int n, int d = 2) {
  ModelSpec s;
  s.family = fam;
  s.n = n;
  s.d = d;
  return s;
}

}  // namespace

TEST_CASE("local_solve lands on the two-point optimum from a rough start") {
  const NlpProblem p = build_minmax_primal(2, 1);
  SolveOptions opts;
  const LocalSolveResult r = local_solve(p, std::vector<double>{0.0, 0.5, 2.0},
                                         opts);
  CHECK(r.max_violation <= opts.feas_tol);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("local_solve grows the single circle to the inscribed optimum") {
  const NlpProblem p = build_circles(1, RectVariant::square);
  SolveOptions opts;
  const LocalSolveResult r =
      local_solve(p, std::vector<double>{0.2, 0.7, 0.1, 1.0}, opts);
  CHECK(r.max_violation <= opts.feas_tol);
  CHECK(r.objective == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("local_solve shrinks the outer hexagon onto a single unit cell") {
  ModelSpec spec = spec_of(Family::hexagons, 1);
  spec.hexform = HexFormulation::reduced;
  const NlpProblem p = build(spec);
  HexConfig start;
  start.n = 1;
  start.R = 2.0;
  start.centers = {{0.1, -0.2}};
  start.thetas = {0.3};
  SolveOptions opts;
  const LocalSolveResult r =
      local_solve(p, encode_hexagons(start, spec.hexform), opts);
  CHECK(r.max_violation <= opts.feas_tol);
  CHECK(r.objective <= 1.0 + 1e-6);

  const Verdict v = validate(spec, decode(spec, r.x));
  CHECK(v.feasible);
  CHECK(v.certified_objective <= 1.0 + 1e-6);
}

TEST_CASE("initial_sample is a pure function of (spec, seed, restart)") {
  const ModelSpec spec = spec_of(Family::circles, 5);
  const NlpProblem p = build(spec);
  const auto a = initial_sample(spec, p, 42, 3);
  const auto b = initial_sample(spec, p, 42, 3);
  CHECK(a == b);
  CHECK(a != initial_sample(spec, p, 42, 4));
  CHECK(a != initial_sample(spec, p, 43, 3));
  REQUIRE(static_cast<int>(a.size()) == p.num_vars());
  for (int i = 0; i < p.num_vars(); ++i) {
    CHECK(a[i] >= p.lower()[i]);
    CHECK(a[i] <= p.upper()[i]);
  }
}

TEST_CASE("circle samples start feasible, hexagon stripe 0 starts feasible") {
  const ModelSpec cs = spec_of(Family::circles, 4);
  const NlpProblem cp = build(cs);
  for (int r = 0; r < 6; ++r)
    CHECK(evaluate(cp, initial_sample(cs, cp, 9 + r, r)).max_violation <=
          1e-12);

  ModelSpec hs = spec_of(Family::hexagons, 7);
  hs.hexform = HexFormulation::reduced;
  const NlpProblem hp = build(hs);
  const auto x0 = initial_sample(hs, hp, 5, 0);
  const Verdict v = validate(hs, decode(hs, x0));
  CHECK(v.feasible);
}

TEST_CASE("multi-start recovers the equilateral triangle in the dual form") {
  ModelSpec spec = spec_of(Family::minmax, 3);
  spec.form = MinMaxForm::dual;
  SolveOptions opts;
  opts.restarts = 16;
  opts.seed = 1;
  const SolveReport rep = solve(spec, opts);
  CHECK(rep.feasible);
  CHECK(rep.best_objective == doctest::Approx(1.0).epsilon(1e-5));

  const Verdict v = validate(spec, decode(spec, rep.best_x));
  CHECK(v.feasible);
  CHECK(v.certified_objective == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("dual form t_min optima: 1 for a pair, 0.5 for the square") {
  ModelSpec spec = spec_of(Family::minmax, 2);
  spec.form = MinMaxForm::dual;
  SolveOptions opts;
  opts.restarts = 16;
  opts.seed = 1;
  const SolveReport pair = solve(spec, opts);
  CHECK(pair.feasible);
  CHECK(pair.best_objective == doctest::Approx(1.0).epsilon(1e-6));

  spec.n = 4;
  opts.restarts = 32;
  const SolveReport square = solve(spec, opts);
  CHECK(square.feasible);
  CHECK(square.best_objective == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("multi-start finds the square for four points") {
  const ModelSpec spec = spec_of(Family::minmax, 4);
  SolveOptions opts;
  opts.restarts = 64;
  opts.seed = 1;
  const SolveReport rep = solve(spec, opts);
  CHECK(rep.feasible);
  CHECK(rep.best_objective == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("multi-start packs two circles to the diagonal-family optimum") {
  // Two equal circles centered on the diagonal: r = (2 - sqrt(2)) / 2 each,
  // so the optimal sum is 2 - sqrt(2).
  const double oracle = 2.0 - std::sqrt(2.0);
  CHECK(oracle == doctest::Approx(0.5857864376269049).epsilon(1e-15));

  const ModelSpec spec = spec_of(Family::circles, 2);
  SolveOptions opts;
  opts.restarts = 64;
  opts.seed = 1;
  const SolveReport rep = solve(spec, opts);
  CHECK(rep.feasible);
  CHECK(rep.best_objective >= oracle - 1e-4);
  CHECK(rep.best_objective <= oracle + 1e-6);
  CHECK(rep.best_violation <= opts.feas_tol);
}

TEST_CASE("parallel and serial drivers produce identical reports") {
  const ModelSpec spec = spec_of(Family::circles, 3);
  SolveOptions opts;
  opts.restarts = 8;
  opts.seed = 77;
  opts.parallel = true;
  const SolveReport a = solve(spec, opts);
  opts.parallel = false;
  const SolveReport b = solve(spec, opts);
  CHECK(a.best_objective == b.best_objective);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.best_x == b.best_x);
  REQUIRE(a.restart_stats.size() == b.restart_stats.size());
  for (size_t i = 0; i < a.restart_stats.size(); ++i) {
    CHECK(a.restart_stats[i].objective == b.restart_stats[i].objective);
    CHECK(a.restart_stats[i].feasible == b.restart_stats[i].feasible);
  }
}

TEST_CASE("the report's winner is consistent with its restart table") {
  const ModelSpec spec = spec_of(Family::circles, 2);
  SolveOptions opts;
  opts.restarts = 12;
  opts.seed = 3;
  const SolveReport rep = solve(spec, opts);
  REQUIRE(rep.feasible);
  REQUIRE(rep.best_restart >= 0);
  // Polish may only improve on the winner; certifier-driven tightening may
  // shave it by a few multiples of feas_tol.
  const RestartStat& win = rep.restart_stats[rep.best_restart];
  CHECK(win.feasible);
  CHECK(rep.best_objective >= win.objective - 5e-9);
  for (const RestartStat& s : rep.restart_stats)
    if (s.feasible) CHECK(rep.best_objective >= s.objective - 5e-9);
}

TEST_CASE("a feasible report certifies under the validator") {
  ModelSpec spec = spec_of(Family::hexagons, 2);
  spec.hexform = HexFormulation::reduced;
  SolveOptions opts;
  opts.restarts = 8;
  opts.seed = 11;
  const SolveReport rep = solve(spec, opts);
  REQUIRE(rep.feasible);
  const Verdict v = validate(spec, decode(spec, rep.best_x));
  CHECK(v.feasible);
  CHECK(v.max_violation <= opts.feas_tol);
}

TEST_CASE("accepted inner steps never increase the merit") {
  const ModelSpec spec = spec_of(Family::circles, 2);
  const NlpProblem p = build(spec);
  SolveOptions opts;
  opts.record_trace = true;
  const auto x0 = initial_sample(spec, p, 21, 1);
  const LocalSolveResult r = local_solve(p, x0, opts);
  REQUIRE(!r.merit_trace.empty());
  for (const auto& series : r.merit_trace)
    for (size_t i = 1; i < series.size(); ++i)
      CHECK(series[i] <= series[i - 1] + 1e-15);
}

TEST_CASE("a zero time limit skips every restart and reports infeasible") {
  const ModelSpec spec = spec_of(Family::circles, 2);
  SolveOptions opts;
  opts.restarts = 4;
  opts.time_limit = 0.0;
  const SolveReport rep = solve(spec, opts);
  CHECK(!rep.feasible);
  CHECK(rep.best_x.empty());
  for (const RestartStat& s : rep.restart_stats) CHECK(s.skipped);
}

TEST_CASE("option validation") {
  const ModelSpec spec = spec_of(Family::circles, 1);
  SolveOptions opts;
  opts.restarts = 0;
  CHECK_THROWS_AS(solve(spec, opts), std::invalid_argument);
  CHECK(solver_thread_cap() >= 1);
}

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geopack/models.hpp"
#include "geopack/nlp.hpp"

namespace geopack {

struct SolveOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
  std::optional<double> time_limit;  // seconds; checked at restart boundaries
  double feas_tol = 1e-9;
  double opt_tol = 1e-8;
  int max_outer_iters = 50;
  int max_inner_iters = 500;
  bool parallel = true;
  bool record_trace = false;
  // Optional two-fidelity schedule: every restart first runs with the inner
  // budget capped at screen_inner_iters, then the deep_candidates most
  // promising endpoints are re-solved at the full budget. Off by default
  // (screen_inner_iters = 0): worth enabling for expensive instances such as
  // large hexagon packings. deep_candidates = 0 picks max(4, restarts / 12).
  int screen_inner_iters = 0;
  int deep_candidates = 0;
};

struct LocalSolveResult {
  std::vector<double> x;
  double objective = 0.0;      // in the problem's own sense
  double max_violation = 0.0;  // constraint violation at x (box always 0)
  bool converged = false;
  int outer_iters = 0;
  int inner_iters = 0;
  // One merit series per outer iteration (accepted inner steps only);
  // populated when opts.record_trace is set.
  std::vector<std::vector<double>> merit_trace;
};

struct RestartStat {
  int restart = 0;
  double objective = 0.0;
  double max_violation = 0.0;
  bool feasible = false;
  bool converged = false;
  bool skipped = false;  // time limit hit before this restart began
  int outer_iters = 0;
  int inner_iters = 0;
};

struct SolveReport {
  ModelSpec spec;
  std::vector<double> best_x;
  double best_objective = 0.0;
  double best_violation = 0.0;
  int best_restart = -1;
  bool feasible = false;
  bool polish_applied = false;
  std::uint64_t seed_used = 0;
  double wall_time = 0.0;  // seconds
  std::vector<RestartStat> restart_stats;
};

// Augmented Lagrangian (PHR) with a projected L-BFGS inner minimizer.
LocalSolveResult local_solve(const NlpProblem& problem,
                             std::span<const double> x0,
                             const SolveOptions& opts);

// Family-aware deterministic seed for one restart; the result lies inside the
// variable boxes. Same (spec, seed, restart_index) gives bit-identical output.
std::vector<double> initial_sample(const ModelSpec& spec,
                                   const NlpProblem& problem,
                                   std::uint64_t seed, int restart_index);

// Multi-start driver: opts.restarts independent local solves (OpenMP when
// opts.parallel and the build has it; GEOPACK_THREADS caps the thread count),
// deterministic best-of reduction (feasibility first, then objective in the
// problem's sense, ties to the lowest restart index), then one polish solve
// from the incumbent at 10x tighter tolerances.
SolveReport solve(const ModelSpec& spec, const NlpProblem& problem,
                  const SolveOptions& opts);
SolveReport solve(const ModelSpec& spec, const SolveOptions& opts);

// Thread count the restart loop will use: min(hardware, GEOPACK_THREADS).
int solver_thread_cap();

}  // namespace geopack

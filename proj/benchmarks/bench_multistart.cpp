#include <benchmark/benchmark.h>

#include "geopack/models.hpp"
#include "geopack/solver.hpp"

using namespace geopack;

namespace {

ModelSpec circles_spec(int n) {
  ModelSpec s;
  s.family = Family::circles;
  s.n = n;
  return s;
}

ModelSpec hexagons_spec(int n) {
  ModelSpec s;
  s.family = Family::hexagons;
  s.n = n;
  s.hexform = HexFormulation::reduced;
  return s;
}

void run_multistart(benchmark::State& state, const ModelSpec& spec,
                    bool parallel) {
  const NlpProblem problem = build(spec);
  SolveOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  opts.seed = 1;
  opts.parallel = parallel;
  for (auto _ : state) {
    const SolveReport rep = solve(spec, problem, opts);
    benchmark::DoNotOptimize(rep.best_objective);
  }
  state.counters["threads"] = parallel ? solver_thread_cap() : 1;
}

void BM_CirclesSerial(benchmark::State& state) {
  run_multistart(state, circles_spec(6), false);
}

void BM_CirclesParallel(benchmark::State& state) {
  run_multistart(state, circles_spec(6), true);
}

void BM_HexagonsSerial(benchmark::State& state) {
  run_multistart(state, hexagons_spec(3), false);
}

void BM_HexagonsParallel(benchmark::State& state) {
  run_multistart(state, hexagons_spec(3), true);
}

}  // namespace

BENCHMARK(BM_CirclesSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CirclesParallel)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HexagonsSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HexagonsParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

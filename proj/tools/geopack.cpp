#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "geopack/models.hpp"
#include "geopack/registry.hpp"
#include "geopack/render.hpp"
#include "geopack/solution_io.hpp"
#include "geopack/solver.hpp"
#include "geopack/validator.hpp"

namespace {

using namespace geopack;

struct Args {
  std::string family;
  int n = 0;
  int d = 2;
  std::string variant = "square";
  std::string formulation = "primal";
  int restarts = 64;
  std::uint64_t seed = 1;
  double time_limit = 0.0;
  bool has_time_limit = false;
  double tol = 1e-9;
  std::string out;
  std::string in;
  std::string registry_path;
  std::string export_registry;
};

ModelSpec make_spec(const Args& a) {
  ModelSpec spec;
  if (a.family == "minmax")
    spec.family = Family::minmax;
  else if (a.family == "circles")
    spec.family = Family::circles;
  else
    spec.family = Family::hexagons;
  spec.n = a.n;
  spec.d = a.d;
  spec.form = a.formulation == "dual" ? MinMaxForm::dual : MinMaxForm::primal;
  spec.variant =
      a.variant == "rectangle" ? RectVariant::rectangle : RectVariant::square;
  return spec;
}

std::string spec_label(const ModelSpec& spec) {
  std::string s = family_name(spec.family);
  if (spec.family == Family::circles) s += " " + variant_name(spec.variant);
  s += " n=" + std::to_string(spec.n);
  if (spec.family == Family::minmax) s += " d=" + std::to_string(spec.d);
  return s;
}

void print_verdict(const Verdict& v) {
  std::printf("certified=%.12g reported=%s violation=%.3e %s\n",
              v.certified_objective, v.reported_value.c_str(),
              v.max_violation, v.feasible ? "feasible" : "infeasible");
  auto sorted = v.violations;
  std::sort(sorted.begin(), sorted.end(),
            [](const Violation& a, const Violation& b) {
              return a.magnitude > b.magnitude;
            });
  const size_t show = std::min<size_t>(sorted.size(), 8);
  for (size_t i = 0; i < show; ++i)
    std::printf("  violation %s magnitude %.6e\n", sorted[i].label.c_str(),
                sorted[i].magnitude);
  if (sorted.size() > show)
    std::printf("  (%zu more)\n", sorted.size() - show);
}

int cmd_solve(const Args& a) {
  const ModelSpec spec = make_spec(a);
  const NlpProblem problem = build(spec);

  SolveOptions opts;
  opts.restarts = a.restarts;
  opts.seed = a.seed;
  opts.feas_tol = a.tol;
  if (a.has_time_limit) opts.time_limit = a.time_limit;

  const SolveReport rep = solve(spec, problem, opts);
  const AnyConfig config = decode(spec, rep.best_x);
  const Verdict verdict = validate(spec, config, a.tol);

  SolutionFile sol;
  sol.spec = spec;
  sol.config = config;
  sol.certified_objective = verdict.certified_objective;
  sol.reported_value = verdict.reported_value;
  sol.meta.seed = a.seed;
  sol.meta.restarts = a.restarts;
  sol.meta.wall_time = rep.wall_time;
  const std::string out = a.out.empty() ? "solution.json" : a.out;
  save_solution(sol, out);

  std::printf("%s: solver objective %.9f, wall %.1fs, best restart %d\n",
              spec_label(spec).c_str(), rep.best_objective, rep.wall_time,
              rep.best_restart);
  print_verdict(verdict);
  std::printf("wrote %s\n", out.c_str());
  if (!verdict.feasible) {
    std::fprintf(stderr, "solve: result is infeasible after repair\n");
    return 1;
  }
  return 0;
}

int cmd_validate(const Args& a) {
  const SolutionFile sol = load_solution(a.in);
  const Verdict v = validate(sol.spec, sol.config, a.tol);
  std::printf("%s\n", spec_label(sol.spec).c_str());
  print_verdict(v);
  if (!sol.reported_value.empty() && sol.reported_value != v.reported_value) {
    std::printf(
        "warning: stored reported_value %s disagrees with recomputed %s\n",
        sol.reported_value.c_str(), v.reported_value.c_str());
  } else {
    const double stored = sol.certified_objective;
    if (std::abs(stored - v.certified_objective) >
        1e-9 * std::max(1.0, std::abs(stored)))
      std::printf(
          "warning: stored certified_objective %.12g disagrees with "
          "recomputed %.12g\n",
          stored, v.certified_objective);
  }
  return v.feasible ? 0 : 1;
}

int cmd_render(const Args& a) {
  const SolutionFile sol = load_solution(a.in);
  const Verdict v = validate(sol.spec, sol.config, a.tol);
  if (!v.feasible) {
    std::fprintf(stderr, "render: refusing infeasible configuration (%s)\n",
                 v.violations.empty() ? "violations present"
                                      : v.violations.front().label.c_str());
    return 1;
  }
  const std::string svg = render_svg(sol.spec, sol.config);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw std::runtime_error("render: cannot write " + a.out);
  out << svg;
  std::printf("wrote %s\n", a.out.c_str());
  return 0;
}

int cmd_compare(const Args& a) {
  const Registry reg = a.registry_path.empty()
                           ? builtin_registry()
                           : load_registry(a.registry_path);
  if (!a.export_registry.empty()) {
    save_registry(reg, a.export_registry);
    std::printf("exported registry to %s\n", a.export_registry.c_str());
    if (a.in.empty()) return 0;
  }
  const SolutionFile sol = load_solution(a.in);
  const Verdict v = validate(sol.spec, sol.config, a.tol);
  if (!v.feasible) {
    std::fprintf(stderr, "compare: configuration is infeasible\n");
    return 1;
  }
  const ComparisonRow row = compare(v, sol.spec, reg);
  std::printf("%s ours=%s best=%s status=%s", spec_label(sol.spec).c_str(),
              row.our_value.c_str(),
              row.best_value.empty() ? "-" : row.best_value.c_str(),
              status_name(row.status).c_str());
  if (!std::isnan(row.relative_gap))
    std::printf(" gap=%+.3e", row.relative_gap);
  std::printf("\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geopack: solve, certify, compare and render packing models"};
  app.require_subcommand(1);
  Args a;

  auto* solve_cmd =
      app.add_subcommand("solve", "run the multi-start solver on one model");
  solve_cmd->add_option("--family", a.family, "model family")
      ->required()
      ->check(CLI::IsMember({"minmax", "circles", "hexagons"}));
  solve_cmd->add_option("--n", a.n, "number of points/circles/hexagons")
      ->required();
  solve_cmd->add_option("--d", a.d, "dimension (minmax only)");
  solve_cmd->add_option("--variant", a.variant, "rectangle variant (circles)")
      ->check(CLI::IsMember({"square", "rectangle"}));
  solve_cmd
      ->add_option("--formulation", a.formulation,
                   "minmax formulation (default primal)")
      ->check(CLI::IsMember({"primal", "dual"}));
  solve_cmd->add_option("--restarts", a.restarts, "multi-start count");
  solve_cmd->add_option("--seed", a.seed, "RNG seed");
  auto* tl = solve_cmd->add_option("--time-limit", a.time_limit,
                                   "wall clock budget in seconds");
  solve_cmd->add_option("--tol", a.tol, "feasibility tolerance");
  solve_cmd->add_option("--out", a.out, "solution file path");

  auto* validate_cmd =
      app.add_subcommand("validate", "re-certify a solution file");
  validate_cmd->add_option("file", a.in, "solution JSON path")->required();
  validate_cmd->add_option("--tol", a.tol, "feasibility tolerance");

  auto* render_cmd =
      app.add_subcommand("render", "draw a solution file as SVG");
  render_cmd->add_option("file", a.in, "solution JSON path")->required();
  render_cmd->add_option("--out", a.out, "output SVG path")->required();
  render_cmd->add_option("--tol", a.tol, "feasibility tolerance");

  auto* compare_cmd = app.add_subcommand(
      "compare", "compare a solution against the best-known registry");
  compare_cmd->add_option("file", a.in, "solution JSON path");
  compare_cmd->add_option("--registry", a.registry_path,
                          "registry JSON (default: builtin)");
  compare_cmd->add_option("--export-registry", a.export_registry,
                          "write the registry JSON to this path");
  compare_cmd->add_option("--tol", a.tol, "feasibility tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  a.has_time_limit = tl->count() > 0;

  try {
    if (app.got_subcommand(solve_cmd)) return cmd_solve(a);
    if (app.got_subcommand(validate_cmd)) return cmd_validate(a);
    if (app.got_subcommand(render_cmd)) return cmd_render(a);
    if (app.got_subcommand(compare_cmd)) {
      if (a.in.empty() && a.export_registry.empty()) {
        std::fprintf(stderr,
                     "compare: need a solution file or --export-registry\n");
        return 2;
      }
      return cmd_compare(a);
    }
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

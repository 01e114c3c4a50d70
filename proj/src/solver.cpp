#include "geopack/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <string>
#include <cstdio>

#include "geopack/geometry.hpp"
#include "geopack/rng.hpp"
#include "geopack/validator.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geopack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

void project(const NlpProblem& p, std::vector<double>& x) {
  for (int i = 0; i < p.num_vars(); ++i)
    x[i] = clamp(x[i], p.lower()[i], p.upper()[i]);
}

// Everything below minimizes sign * f subject to the constraints; sign flips
// a maximization problem.
struct AlState {
  double sign = 1.0;
  std::vector<double> mu;   // inequality multipliers (0 for equalities)
  std::vector<double> lam;  // equality multipliers (0 for inequalities)
  double rho = 10.0;
};

// Augmented Lagrangian value; fills cons with raw constraint values.
// Returns +inf on any non-finite intermediate so line searches back off.
double al_value(const NlpProblem& p, const AlState& s,
                std::span<const double> x, std::vector<double>& cons) {
  const double f = p.objective().value(x);
  if (!std::isfinite(f)) return kInf;
  double L = s.sign * f;
  for (int k = 0; k < p.num_constraints(); ++k) {
    const Constraint& c = p.constraint(k);
    const double v = c.func.value(x);
    cons[k] = v;
    if (!std::isfinite(v)) return kInf;
    if (c.kind == ConstraintKind::inequality) {
      const double t = s.mu[k] + s.rho * v;
      L += (t > 0.0 ? t * t - s.mu[k] * s.mu[k] : -s.mu[k] * s.mu[k]) /
           (2.0 * s.rho);
    } else {
      L += s.lam[k] * v + 0.5 * s.rho * v * v;
    }
  }
  return std::isfinite(L) ? L : kInf;
}

// Gradient of the augmented Lagrangian at x given raw constraint values cons.
void al_gradient(const NlpProblem& p, const AlState& s,
                 std::span<const double> x, std::span<const double> cons,
                 std::vector<double>& grad, std::vector<GradEntry>& scratch) {
  grad.assign(p.num_vars(), 0.0);
  scratch.clear();
  p.objective().gradient(x, scratch);
  for (const GradEntry& e : scratch) grad[e.index] += s.sign * e.value;
  for (int k = 0; k < p.num_constraints(); ++k) {
    const Constraint& c = p.constraint(k);
    double factor;
    if (c.kind == ConstraintKind::inequality) {
      factor = std::max(0.0, s.mu[k] + s.rho * cons[k]);
    } else {
      factor = s.lam[k] + s.rho * cons[k];
    }
    if (factor == 0.0) continue;
    scratch.clear();
    c.func.gradient(x, scratch);
    for (const GradEntry& e : scratch) grad[e.index] += factor * e.value;
  }
}

double constraint_violation(const NlpProblem& p,
                            std::span<const double> cons) {
  double v = 0.0;
  for (int k = 0; k < p.num_constraints(); ++k) {
    if (p.constraint(k).kind == ConstraintKind::inequality) {
      v = std::max(v, cons[k]);
    } else {
      v = std::max(v, std::abs(cons[k]));
    }
  }
  return v;
}

double projected_grad_norm(const NlpProblem& p, std::span<const double> x,
                           std::span<const double> grad) {
  double nrm = 0.0;
  for (int i = 0; i < p.num_vars(); ++i) {
    const double step = x[i] - clamp(x[i] - grad[i], p.lower()[i],
                                     p.upper()[i]);
    nrm = std::max(nrm, std::abs(step));
  }
  return nrm;
}

struct LbfgsPair {
  std::vector<double> s, y;
  double rho_sy;
};

// Two-loop recursion; direction overwritten into d.
void lbfgs_direction(const std::deque<LbfgsPair>& mem,
                     std::span<const double> grad, std::vector<double>& d,
                     std::vector<double>& alpha_buf) {
  const int n = static_cast<int>(grad.size());
  d.assign(grad.begin(), grad.end());
  const int m = static_cast<int>(mem.size());
  alpha_buf.assign(m, 0.0);
  for (int i = m - 1; i >= 0; --i) {
    double si_d = 0.0;
    for (int k = 0; k < n; ++k) si_d += mem[i].s[k] * d[k];
    alpha_buf[i] = mem[i].rho_sy * si_d;
    for (int k = 0; k < n; ++k) d[k] -= alpha_buf[i] * mem[i].y[k];
  }
  if (m > 0) {
    double sy = 0.0, yy = 0.0;
    for (int k = 0; k < n; ++k) {
      sy += mem.back().s[k] * mem.back().y[k];
      yy += mem.back().y[k] * mem.back().y[k];
    }
    const double gamma = yy > 0.0 ? sy / yy : 1.0;
    for (double& v : d) v *= gamma;
  }
  for (int i = 0; i < m; ++i) {
    double yi_d = 0.0;
    for (int k = 0; k < n; ++k) yi_d += mem[i].y[k] * d[k];
    const double beta = mem[i].rho_sy * yi_d;
    for (int k = 0; k < n; ++k) d[k] += (alpha_buf[i] - beta) * mem[i].s[k];
  }
  for (double& v : d) v = -v;
}

struct InnerResult {
  double al = 0.0;
  double pg_norm = 0.0;
  int iters = 0;
};

// Projected L-BFGS with Armijo backtracking along the projected arc.
// x, cons, grad are updated in place; merit (if non-null) records the AL
// value after every accepted step.
InnerResult inner_minimize(const NlpProblem& p, const AlState& s,
                           std::vector<double>& x, std::vector<double>& cons,
                           std::vector<double>& grad, double tol,
                           int max_iters, std::vector<double>* merit) {
  const int n = p.num_vars();
  std::vector<GradEntry> scratch;
  std::vector<double> d(n), x_trial(n), cons_trial(p.num_constraints());
  std::vector<double> alpha_buf;
  std::deque<LbfgsPair> mem;

  double L = al_value(p, s, x, cons);
  if (!std::isfinite(L)) {
    // Seed point is broken for this subproblem; report and let the caller
    // decide what to do with the unchanged iterate.
    return {kInf, kInf, 0};
  }
  al_gradient(p, s, x, cons, grad, scratch);
  if (merit) merit->push_back(L);

  InnerResult out;
  double checkpoint_L = L;
  for (int it = 0; it < max_iters; ++it) {
    out.pg_norm = projected_grad_norm(p, x, grad);
    if (out.pg_norm <= tol) break;
    // At large penalties the subproblem conditioning defeats L-BFGS long
    // before pg reaches tol; once the merit stops moving, more iterations
    // are wasted and the multiplier update is the productive next step.
    if (it > 0 && it % 25 == 0) {
      if (checkpoint_L - L <= 1e-11 * (1.0 + std::abs(L))) break;
      checkpoint_L = L;
    }

    lbfgs_direction(mem, grad, d, alpha_buf);
    double gd = 0.0;
    for (int k = 0; k < n; ++k) gd += grad[k] * d[k];
    if (!(gd < 0.0)) {
      d.assign(grad.begin(), grad.end());
      for (double& v : d) v = -v;
      mem.clear();
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int ls = 0; ls < 60; ++ls) {
      double step_norm = 0.0, g_step = 0.0;
      for (int k = 0; k < n; ++k) {
        x_trial[k] = clamp(x[k] + alpha * d[k], p.lower()[k], p.upper()[k]);
        const double st = x_trial[k] - x[k];
        step_norm = std::max(step_norm, std::abs(st));
        g_step += grad[k] * st;
      }
      if (step_norm == 0.0) break;  // direction fully blocked by the box
      const double L_trial = al_value(p, s, x_trial, cons_trial);
      // Box clipping can flip g_step positive; the extra L_trial <= L keeps
      // accepted steps monotone in the merit regardless.
      if (L_trial <= L + 1e-4 * g_step && L_trial <= L &&
          std::isfinite(L_trial)) {
        // Curvature update before x is overwritten.
        LbfgsPair pair;
        pair.s.resize(n);
        pair.y.resize(n);
        std::vector<double> grad_new(n);
        al_gradient(p, s, x_trial, cons_trial, grad_new, scratch);
        double sy = 0.0, ss = 0.0, yy = 0.0;
        for (int k = 0; k < n; ++k) {
          pair.s[k] = x_trial[k] - x[k];
          pair.y[k] = grad_new[k] - grad[k];
          sy += pair.s[k] * pair.y[k];
          ss += pair.s[k] * pair.s[k];
          yy += pair.y[k] * pair.y[k];
        }
        if (sy > 1e-10 * std::sqrt(ss * yy)) {
          pair.rho_sy = 1.0 / sy;
          mem.push_back(std::move(pair));
          if (mem.size() > 10) mem.pop_front();
        }
        x.swap(x_trial);
        cons.swap(cons_trial);
        grad.swap(grad_new);
        L = L_trial;
        if (merit) merit->push_back(L);
        accepted = true;
        break;
      }
      alpha *= 0.5;  // also the NaN/Inf escape: L_trial was +inf
    }
    ++out.iters;
    if (!accepted) {
      if (mem.empty()) break;  // steepest descent stalled, give up
      mem.clear();             // retry from a fresh quasi-Newton state
    }
  }
  out.al = L;
  out.pg_norm = projected_grad_norm(p, x, grad);
  return out;
}

}  // namespace

LocalSolveResult local_solve(const NlpProblem& problem,
                             std::span<const double> x0,
                             const SolveOptions& opts) {
  const int n = problem.num_vars();
  const int m = problem.num_constraints();

  LocalSolveResult res;
  res.x.assign(x0.begin(), x0.end());
  if (static_cast<int>(res.x.size()) != n)
    throw std::invalid_argument("local_solve: x0 dimension mismatch");
  for (double& v : res.x)
    if (!std::isfinite(v)) v = 0.0;
  project(problem, res.x);

  AlState st;
  st.sign = problem.sense() == Sense::maximize ? -1.0 : 1.0;
  st.mu.assign(m, 0.0);
  st.lam.assign(m, 0.0);

  std::vector<double> cons(m, 0.0), grad(n, 0.0);
  double prev_viol = kInf;
  double best_viol = kInf, best_pg = kInf;
  int stall = 0;

  for (int outer = 0; outer < opts.max_outer_iters; ++outer) {
    const double inner_tol =
        prev_viol <= opts.feas_tol
            ? opts.opt_tol
            : std::max(opts.opt_tol, 1e-2 * std::pow(0.2, outer));
    std::vector<double>* merit = nullptr;
    if (opts.record_trace) {
      res.merit_trace.emplace_back();
      merit = &res.merit_trace.back();
    }
    const InnerResult inner = inner_minimize(problem, st, res.x, cons, grad,
                                             inner_tol, opts.max_inner_iters,
                                             merit);
    res.inner_iters += inner.iters;
    res.outer_iters = outer + 1;
    if (!std::isfinite(inner.al)) break;  // unevaluable iterate, stop honestly

    const double viol = constraint_violation(problem, cons);
#ifdef GEOPACK_SOLVER_DEBUG
    std::fprintf(stderr,
                 "outer %2d: inner=%4d al=%.8e pg=%.3e viol=%.3e rho=%.1e\n",
                 outer, inner.iters, inner.al, inner.pg_norm, viol, st.rho);
#endif
    if (viol <= opts.feas_tol && inner.pg_norm <= opts.opt_tol) {
      res.converged = true;
      break;
    }

    // Give up on subproblems that have stopped making progress: infeasible
    // runs get several outer rounds for penalty growth to bite, feasible ones
    // stop quickly once stationarity has plateaued (polish can finish later).
    if (viol > opts.feas_tol) {
      if (viol <= 0.7 * best_viol) {
        best_viol = viol;
        stall = 0;
      } else if (++stall >= 6) {
        break;
      }
    } else {
      if (inner.pg_norm <= 0.7 * best_pg) {
        best_pg = inner.pg_norm;
        stall = 0;
      } else if (++stall >= 2) {
        break;
      }
    }

    for (int k = 0; k < m; ++k) {
      if (problem.constraint(k).kind == ConstraintKind::inequality) {
        st.mu[k] = std::max(0.0, st.mu[k] + st.rho * cons[k]);
      } else {
        st.lam[k] += st.rho * cons[k];
      }
    }
    if (viol > 0.25 * prev_viol && viol > opts.feas_tol) {
      st.rho = std::min(st.rho * 5.0, 1e10);
    }
    prev_viol = viol;
  }

  double obj = problem.objective().value(res.x);
  if (!std::isfinite(obj)) {
    obj = st.sign > 0 ? kInf : -kInf;
    res.converged = false;
  }
  res.objective = obj;
  // Recompute the raw violation at the final point.
  double viol = 0.0;
  for (int k = 0; k < m; ++k) {
    const Constraint& c = problem.constraint(k);
    const double v = c.func.value(res.x);
    if (!std::isfinite(v)) {
      viol = kInf;
      break;
    }
    viol = std::max(viol, c.kind == ConstraintKind::inequality ? v
                                                               : std::abs(v));
  }
  res.max_violation = viol;
  return res;
}

// ---------------------------------------------------------------------------
// Initial sampling
// ---------------------------------------------------------------------------

namespace {

std::vector<double> sample_minmax(const ModelSpec& spec, std::uint64_t seed,
                                  int restart) {
  const int n = spec.n, d = spec.d;
  SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
  const bool primal = spec.form == MinMaxForm::primal;
  const double half_width =
      primal ? 0.55 * std::pow(static_cast<double>(n), 1.0 / d) + 0.5 : 0.5;

  std::vector<double> x(minmax_num_vars(n, d));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) {
      const double h =
          halton(static_cast<std::uint64_t>(restart) * n + i, nth_prime(k));
      const double jitter = rng.uniform(-0.05, 0.05) * half_width;
      x[i * d + k] = (2.0 * h - 1.0) * half_width + jitter;
    }
  }

  double min2 = kInf, max2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) {
        const double dk = x[i * d + k] - x[j * d + k];
        s += dk * dk;
      }
      min2 = std::min(min2, s);
      max2 = std::max(max2, s);
    }
  }

  const int t_idx = n * d;
  if (primal) {
    // Scale so the min pairwise distance is 1, then t = max squared distance.
    if (min2 > 1e-12) {
      const double scale = 1.0 / std::sqrt(min2);
      for (int i = 0; i < t_idx; ++i) x[i] *= scale;
      x[t_idx] = max2 / min2;
    } else {
      x[t_idx] = 4.0 * n * n * d;
    }
  } else {
    // Scale so the max pairwise distance is 1, then t = min squared distance.
    if (max2 > 1e-12) {
      const double scale = 1.0 / std::sqrt(max2);
      for (int i = 0; i < t_idx; ++i) x[i] *= scale;
      x[t_idx] = min2 / max2;
    } else {
      x[t_idx] = 0.0;
    }
  }
  return x;
}

std::vector<double> sample_circles(const ModelSpec& spec, std::uint64_t seed,
                                   int restart) {
  const int n = spec.n;
  SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
  const double alpha = spec.variant == RectVariant::square
                           ? 1.0
                           : rng.uniform(0.85, 1.0);
  const int cols = static_cast<int>(std::ceil(std::sqrt(n)));
  const int rows = (n + cols - 1) / cols;
  const double cell_w = alpha / cols;
  const double cell_h = (2.0 - alpha) / rows;
  const double cell_min = std::min(cell_w, cell_h);

  std::vector<double> x(circles_num_vars(n));
  for (int i = 0; i < n; ++i) {
    const int col = i % cols, row = i / cols;
    const double cx = (col + 0.5) * cell_w + rng.uniform(-0.15, 0.15) * cell_w;
    const double cy = (row + 0.5) * cell_h + rng.uniform(-0.15, 0.15) * cell_h;
    x[2 * i] = cx;
    x[2 * i + 1] = cy;
    x[2 * n + i] = 0.25 * cell_min * rng.uniform(0.8, 1.2);
  }
  x[3 * n] = alpha;
  return x;
}

std::vector<double> sample_hexagons(const ModelSpec& spec, std::uint64_t seed,
                                    int restart) {
  const int n = spec.n;
  SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
  std::vector<double> x(hexagons_num_vars(n, spec.hexform), 0.0);
  x[0] = 1.2 * std::sqrt(static_cast<double>(n));

  // Three seeding stripes, cycled by restart index. The pure lattice always
  // relaxes into the same honeycomb optimum, so later stripes trade initial
  // feasibility for basin diversity (the solver separates overlaps itself).
  const int stripe = restart % 3;
  if (stripe == 0) {
    // Spacing 2.02 with jitter <= 0.005 keeps every center pair at distance
    // >= 2.01 > 2 circumradii: disjoint seed geometry for any angles.
    const std::vector<Vec2> sites = honeycomb_sites(n, 2.02);
    for (int i = 0; i < n; ++i) {
      x[1 + 2 * i] = sites[i].x + rng.uniform(-0.005, 0.005);
      x[2 + 2 * i] = sites[i].y + rng.uniform(-0.005, 0.005);
      x[1 + 2 * n + i] = rng.uniform(0.0, kHexSector);
    }
  } else if (stripe == 1) {
    // Compressed, globally rotated, strongly jittered lattice.
    const double spacing = rng.uniform(1.80, 2.10);
    const double rot = rng.uniform(0.0, kHexSector);
    const double cr = std::cos(rot), sr = std::sin(rot);
    const std::vector<Vec2> sites = honeycomb_sites(n, spacing);
    for (int i = 0; i < n; ++i) {
      const double jx = rng.uniform(-0.15, 0.15);
      const double jy = rng.uniform(-0.15, 0.15);
      const Vec2& s = sites[i];
      x[1 + 2 * i] = cr * s.x - sr * s.y + jx;
      x[2 + 2 * i] = sr * s.x + cr * s.y + jy;
      x[1 + 2 * n + i] = rng.uniform(0.0, kHexSector);
    }
  } else {
    // Uniform in a disk sized to the initial outer hexagon.
    const double reach =
        std::max(0.5, kHexApothem * x[0] - 1.0) * rng.uniform(0.85, 1.0);
    for (int i = 0; i < n; ++i) {
      const double rad = reach * std::sqrt(rng.next_double());
      const double ang = rng.uniform(0.0, 2.0 * kPi);
      x[1 + 2 * i] = rad * std::cos(ang);
      x[2 + 2 * i] = rad * std::sin(ang);
      x[1 + 2 * n + i] = rng.uniform(0.0, kHexSector);
    }
  }
  const int lam_base =
      spec.hexform == HexFormulation::full ? 1 + 21 * n : 1 + 3 * n;
  if (spec.hexform == HexFormulation::full) {
    for (int i = 0; i < n; ++i) {
      const HexPose pose{{x[1 + 2 * i], x[2 + 2 * i]}, x[1 + 2 * n + i]};
      const auto hs = hex_half_spaces(pose);
      for (int j = 0; j < 6; ++j) {
        x[1 + 3 * n + 6 * i + j] = hs[j].a;
        x[1 + 9 * n + 6 * i + j] = hs[j].b;
        x[1 + 15 * n + 6 * i + j] = hs[j].c;
      }
    }
  }
  for (int p = 0; p < num_pairs(n); ++p) {
    double sum = 0.0;
    double lam[12];
    for (int k = 0; k < 12; ++k) {
      lam[k] = -std::log(1.0 - rng.next_double());
      sum += lam[k];
    }
    for (int k = 0; k < 12; ++k) x[lam_base + 12 * p + k] = lam[k] / sum;
  }
  return x;
}

}  // namespace

std::vector<double> initial_sample(const ModelSpec& spec,
                                   const NlpProblem& problem,
                                   std::uint64_t seed, int restart_index) {
  std::vector<double> x;
  switch (spec.family) {
    case Family::minmax:
      x = sample_minmax(spec, seed, restart_index);
      break;
    case Family::circles:
      x = sample_circles(spec, seed, restart_index);
      break;
    case Family::hexagons:
      x = sample_hexagons(spec, seed, restart_index);
      break;
  }
  project(problem, x);
  return x;
}

// ---------------------------------------------------------------------------
// Multi-start driver
// ---------------------------------------------------------------------------

int solver_thread_cap() {
#ifdef _OPENMP
  int hw = omp_get_max_threads();
#else
  int hw = 1;
#endif
  if (const char* env = std::getenv("GEOPACK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = std::min(hw, static_cast<int>(v));
  }
  return std::max(1, hw);
}

namespace {

// The hexagon geometry is exactly pi/3-periodic in every theta, so the
// printed box [0, pi/3] is only a symmetry normalization. As a hard box it
// traps hexagons mid-rotation at the walls; the solver therefore optimizes
// over several periods and reduces the result back into the printed box.
NlpProblem relax_hexagon_theta(const ModelSpec& spec, const NlpProblem& p) {
  std::vector<double> lo(p.lower().begin(), p.lower().end());
  std::vector<double> hi(p.upper().begin(), p.upper().end());
  std::vector<std::string> labels;
  labels.reserve(p.num_vars());
  for (int i = 0; i < p.num_vars(); ++i) labels.push_back(p.var_label(i));
  for (int i = 0; i < spec.n; ++i) {
    lo[1 + 2 * spec.n + i] = -2.0 * kHexSector;
    hi[1 + 2 * spec.n + i] = 3.0 * kHexSector;
  }
  std::vector<Constraint> cons(p.constraints().begin(), p.constraints().end());
  return NlpProblem(std::move(lo), std::move(hi), p.sense(), p.objective(),
                    std::move(cons), std::move(labels));
}

// Rotating hexagon i by m periods relabels its sides: side k of the reduced
// pose is side (k - m) mod 6 of the original, so each Farkas block touching
// hexagon i must permute the same way or the certificate breaks.
void reduce_hexagon_theta(const ModelSpec& spec, std::vector<double>& x) {
  const int n = spec.n;
  std::vector<int> shift(n, 0);
  for (int i = 0; i < n; ++i) {
    double& th = x[1 + 2 * n + i];
    const double old = th;
    th = std::fmod(th, kHexSector);
    if (th < 0.0) th += kHexSector;
    shift[i] = static_cast<int>(std::lround((old - th) / kHexSector));
  }
  const int lam_base = 1 + 3 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int p = pair_index(n, i, j);
      double* lam = &x[lam_base + 12 * p];
      double out[12];
      for (int k = 0; k < 6; ++k) {
        out[k] = lam[(((k - shift[i]) % 6) + 6) % 6];
        out[k + 6] = lam[6 + (((k - shift[j]) % 6) + 6) % 6];
      }
      std::copy(out, out + 12, lam);
    }
  }
}

// NLP rows measure residuals in their own algebra (squared distances, Farkas
// combinations); mapped back to plain geometry the slack can exceed the same
// tolerance, so reported feasibility defers to the certifier.
bool certifier_accepts(const ModelSpec& spec, std::vector<double> x,
                       double tol) {
  if (spec.family == Family::hexagons &&
      spec.hexform == HexFormulation::reduced) {
    reduce_hexagon_theta(spec, x);
  }
  try {
    return validate(spec, decode(spec, x), tol).feasible;
  } catch (const std::exception&) {
    return false;
  }
}

// Lower index wins ties so the reduction is schedule-independent.
bool better(const RestartStat& a, const RestartStat& b, Sense sense) {
  if (a.skipped != b.skipped) return !a.skipped;
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) {
    if (a.objective != b.objective) {
      return sense == Sense::minimize ? a.objective < b.objective
                                      : a.objective > b.objective;
    }
    return a.restart < b.restart;
  }
  if (a.max_violation != b.max_violation)
    return a.max_violation < b.max_violation;
  return a.restart < b.restart;
}

}  // namespace

SolveReport solve(const ModelSpec& spec, const NlpProblem& problem,
                  const SolveOptions& opts) {
  if (opts.restarts < 1)
    throw std::invalid_argument("solve: restarts must be >= 1");
  const auto t_start = std::chrono::steady_clock::now();
  const auto deadline_hit = [&]() {
    if (!opts.time_limit) return false;
    const std::chrono::duration<double> el =
        std::chrono::steady_clock::now() - t_start;
    return el.count() >= *opts.time_limit;
  };

  const bool relax_theta = spec.family == Family::hexagons &&
                           spec.hexform == HexFormulation::reduced;
  std::optional<NlpProblem> relaxed;
  if (relax_theta) relaxed.emplace(relax_hexagon_theta(spec, problem));
  const NlpProblem& work = relax_theta ? *relaxed : problem;

  const int R = opts.restarts;
  std::vector<LocalSolveResult> results(R);
  std::vector<RestartStat> stats(R);

  const int screen_budget =
      opts.screen_inner_iters > 0
          ? std::min(opts.screen_inner_iters, opts.max_inner_iters)
          : opts.max_inner_iters;
  SolveOptions screen_opts = opts;
  screen_opts.max_inner_iters = screen_budget;

  const auto record = [&](int r, LocalSolveResult&& res) {
    stats[r].objective = res.objective;
    stats[r].max_violation = res.max_violation;
    stats[r].feasible = res.max_violation <= opts.feas_tol;
    stats[r].converged = res.converged;
    stats[r].outer_iters = res.outer_iters;
    stats[r].inner_iters = res.inner_iters;
    results[r] = std::move(res);
  };

  const auto run_one = [&](int r) {
    stats[r].restart = r;
    if (deadline_hit()) {
      stats[r].skipped = true;
      stats[r].max_violation = kInf;
      return;
    }
    const std::vector<double> x0 = initial_sample(spec, work, opts.seed, r);
    LocalSolveResult res;
    try {
      res = local_solve(work, x0, screen_opts);
    } catch (const std::exception&) {
      res.x = x0;
      res.max_violation = kInf;
      res.objective = problem.sense() == Sense::minimize ? kInf : -kInf;
    }
    record(r, std::move(res));
  };

#ifdef _OPENMP
  if (opts.parallel) {
    const int nt = solver_thread_cap();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (int r = 0; r < R; ++r) run_one(r);
  } else {
    for (int r = 0; r < R; ++r) run_one(r);
  }
#else
  for (int r = 0; r < R; ++r) run_one(r);
#endif

  if (screen_budget < opts.max_inner_iters) {
    const int want =
        opts.deep_candidates > 0 ? opts.deep_candidates : std::max(4, R / 12);
    std::vector<int> order(R);
    for (int r = 0; r < R; ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return better(stats[a], stats[b], problem.sense());
    });
    const int K = std::min(want, R);
    const auto deepen = [&](int c) {
      const int r = order[c];
      if (stats[r].skipped || results[r].x.empty() || deadline_hit()) return;
      LocalSolveResult res;
      try {
        res = local_solve(work, results[r].x, opts);
      } catch (const std::exception&) {
        return;  // keep the screened result
      }
      record(r, std::move(res));
    };
#ifdef _OPENMP
    if (opts.parallel) {
      const int nt = solver_thread_cap();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
      for (int c = 0; c < K; ++c) deepen(c);
    } else {
      for (int c = 0; c < K; ++c) deepen(c);
    }
#else
    for (int c = 0; c < K; ++c) deepen(c);
#endif
  }

  const auto pick_best = [&]() {
    int b = 0;
    for (int r = 1; r < R; ++r) {
      if (better(stats[r], stats[b], problem.sense())) b = r;
    }
    return b;
  };

  int best = pick_best();
  // An incumbent the certifier rejects is repaired in place when the family
  // allows it, otherwise re-polished at tighter feasibility; if it still
  // fails, it is demoted and the next restart takes over. The loop is
  // sequential, so the outcome is independent of thread count.
  while (stats[best].feasible && !stats[best].skipped &&
         !results[best].x.empty() &&
         !certifier_accepts(spec, results[best].x, opts.feas_tol)) {
    bool fixed = false;
    // A rejected circle packing can only be failing on a pair overlap (the
    // wall and cap rows are linear, so the two modules agree on them);
    // giving back half the worst overlap on every radius clears it without
    // leaving the basin or re-solving.
    if (spec.family == Family::circles) {
      const Verdict v =
          validate(spec, decode(spec, results[best].x), opts.feas_tol);
      if (!v.feasible && std::isfinite(v.max_violation)) {
        LocalSolveResult res = results[best];
        const double delta = 0.5 * v.max_violation * (1.0 + 1e-3);
        for (int i = 0; i < spec.n; ++i) res.x[2 * spec.n + i] -= delta;
        project(work, res.x);
        const Evaluation ev = evaluate(work, res.x);
        res.objective = ev.objective_value;
        res.max_violation = ev.max_violation;
        if (res.max_violation <= opts.feas_tol &&
            certifier_accepts(spec, res.x, opts.feas_tol)) {
          record(best, std::move(res));
          fixed = true;
        }
      }
    }
    SolveOptions tight = opts;
    std::vector<double> start = results[best].x;
    for (int pass = 0; pass < 2 && !fixed && !deadline_hit(); ++pass) {
      tight.feas_tol *= 0.1;
      LocalSolveResult res;
      try {
        res = local_solve(work, start, tight);
      } catch (const std::exception&) {
        break;
      }
      start = res.x;
      if (res.max_violation <= opts.feas_tol &&
          certifier_accepts(spec, res.x, opts.feas_tol)) {
        record(best, std::move(res));
        fixed = true;
      }
    }
    if (fixed) break;
    stats[best].feasible = false;
    best = pick_best();
  }

  SolveReport report;
  report.spec = spec;
  report.seed_used = opts.seed;
  report.restart_stats = stats;
  report.best_restart = best;
  report.best_x = results[best].x;
  report.best_objective = stats[best].objective;
  report.best_violation = stats[best].max_violation;
  report.feasible = stats[best].feasible;

  if (!report.best_x.empty() && !stats[best].skipped) {
    SolveOptions polish = opts;
    polish.feas_tol = opts.feas_tol * 0.1;
    polish.opt_tol = opts.opt_tol * 0.1;
    polish.record_trace = false;
    const LocalSolveResult pol = local_solve(work, report.best_x, polish);
    RestartStat pstat;
    pstat.restart = best;
    pstat.objective = pol.objective;
    pstat.max_violation = pol.max_violation;
    pstat.feasible = pol.max_violation <= opts.feas_tol &&
                     certifier_accepts(spec, pol.x, opts.feas_tol);
    if (better(pstat, stats[best], problem.sense())) {
      report.best_x = pol.x;
      report.best_objective = pol.objective;
      report.best_violation = pol.max_violation;
      report.feasible = pstat.feasible;
      report.polish_applied = true;
    }
  }

  if (relax_theta && !report.best_x.empty()) {
    reduce_hexagon_theta(spec, report.best_x);
    // Re-certify against the original boxed problem; the reduction shifts
    // each theta by exact multiples of the double pi/3, so any drift is far
    // below feas_tol.
    double viol = 0.0;
    for (int k = 0; k < problem.num_constraints(); ++k) {
      const Constraint& c = problem.constraint(k);
      const double v = c.func.value(report.best_x);
      viol = std::max(viol, c.kind == ConstraintKind::inequality
                                ? v
                                : std::abs(v));
    }
    report.best_violation = viol;
    report.feasible = viol <= opts.feas_tol &&
                      certifier_accepts(spec, report.best_x, opts.feas_tol);
  }

  const std::chrono::duration<double> el =
      std::chrono::steady_clock::now() - t_start;
  report.wall_time = el.count();
  return report;
}

SolveReport solve(const ModelSpec& spec, const SolveOptions& opts) {
  const NlpProblem problem = build(spec);
  return solve(spec, problem, opts);
}

}  // namespace geopack

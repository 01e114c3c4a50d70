#include "geopack/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geopack {

namespace {

std::string idx2(const char* name, int i, int j) {
  return std::string(name) + "(" + std::to_string(i) + "," + std::to_string(j) +
         ")";
}

std::string idx3(const char* name, int i, int j, int k) {
  return std::string(name) + "(" + std::to_string(i) + "," + std::to_string(j) +
         "," + std::to_string(k) + ")";
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

int minmax_num_vars(int n, int d) { return n * d + 1; }
int minmax_num_constraints(int n) { return 2 * num_pairs(n); }
int circles_num_vars(int n) { return 3 * n + 1; }
int circles_num_constraints(int n) { return 5 * n + num_pairs(n); }

int hexagons_num_vars(int n, HexFormulation form) {
  const int base = 1 + 3 * n + 12 * num_pairs(n);
  return form == HexFormulation::full ? base + 18 * n : base;
}

int hexagons_num_constraints(int n, HexFormulation form) {
  const int base = 36 * n + 4 * num_pairs(n);
  return form == HexFormulation::full ? base + 18 * n : base;
}

// ---------------------------------------------------------------------------
// Min-max distance ratio
// ---------------------------------------------------------------------------

namespace {

NlpProblem build_minmax(int n, int d, MinMaxForm form, bool pin_first) {
  require(n >= 2, "minmax: n must be >= 2");
  require(d >= 1, "minmax: d must be >= 1");
  const int nv = minmax_num_vars(n, d);
  const int t_idx = n * d;
  const double coord_box = form == MinMaxForm::primal ? static_cast<double>(n)
                                                      : 1.5;

  std::vector<double> lo(nv, -coord_box), hi(nv, coord_box);
  if (pin_first)
    for (int k = 0; k < d; ++k) lo[k] = hi[k] = 0.0;
  if (form == MinMaxForm::primal) {
    lo[t_idx] = 1.0;
    hi[t_idx] = 4.0 * n * n * d;  // squared diameter of the coordinate box
  } else {
    lo[t_idx] = 0.0;
    hi[t_idx] = 1.0;
  }

  std::vector<std::string> var_labels;
  var_labels.reserve(nv);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) var_labels.push_back(idx2("x", i, k));
  var_labels.push_back(form == MinMaxForm::primal ? "t_max" : "t_min");

  SmoothFunction obj{
      [t_idx](std::span<const double> x) { return x[t_idx]; },
      [t_idx](std::span<const double>, std::vector<GradEntry>& g) {
        g.push_back({t_idx, 1.0});
      }};

  std::vector<Constraint> cons;
  cons.reserve(minmax_num_constraints(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int bi = i * d, bj = j * d;
      // squared distance >= 1 (primal) / >= t_min (dual)
      cons.push_back(
          {ConstraintKind::inequality,
           {[bi, bj, d, t_idx, form](std::span<const double> x) {
              double s = 0.0;
              for (int k = 0; k < d; ++k) {
                const double dk = x[bi + k] - x[bj + k];
                s += dk * dk;
              }
              const double floor_val =
                  form == MinMaxForm::primal ? 1.0 : x[t_idx];
              return floor_val - s;
            },
            [bi, bj, d, t_idx, form](std::span<const double> x,
                                     std::vector<GradEntry>& g) {
              for (int k = 0; k < d; ++k) {
                const double dk = x[bi + k] - x[bj + k];
                g.push_back({bi + k, -2.0 * dk});
                g.push_back({bj + k, 2.0 * dk});
              }
              if (form == MinMaxForm::dual) g.push_back({t_idx, 1.0});
            }},
           idx2("min_dist", i, j)});
      // squared distance <= t_max (primal) / <= 1 (dual)
      cons.push_back(
          {ConstraintKind::inequality,
           {[bi, bj, d, t_idx, form](std::span<const double> x) {
              double s = 0.0;
              for (int k = 0; k < d; ++k) {
                const double dk = x[bi + k] - x[bj + k];
                s += dk * dk;
              }
              const double cap = form == MinMaxForm::primal ? x[t_idx] : 1.0;
              return s - cap;
            },
            [bi, bj, d, t_idx, form](std::span<const double> x,
                                     std::vector<GradEntry>& g) {
              for (int k = 0; k < d; ++k) {
                const double dk = x[bi + k] - x[bj + k];
                g.push_back({bi + k, 2.0 * dk});
                g.push_back({bj + k, -2.0 * dk});
              }
              if (form == MinMaxForm::primal) g.push_back({t_idx, -1.0});
            }},
           idx2("max_dist", i, j)});
    }
  }

  const Sense sense =
      form == MinMaxForm::primal ? Sense::minimize : Sense::maximize;
  return NlpProblem(std::move(lo), std::move(hi), sense, std::move(obj),
                    std::move(cons), std::move(var_labels));
}

}  // namespace

NlpProblem build_minmax_primal(int n, int d, bool pin_first) {
  return build_minmax(n, d, MinMaxForm::primal, pin_first);
}

NlpProblem build_minmax_dual(int n, int d, bool pin_first) {
  return build_minmax(n, d, MinMaxForm::dual, pin_first);
}

// ---------------------------------------------------------------------------
// Circles in a unit square / perimeter-4 rectangle
// ---------------------------------------------------------------------------

NlpProblem build_circles(int n, RectVariant variant) {
  require(n >= 1, "circles: n must be >= 1");
  const int nv = circles_num_vars(n);
  const int alpha_idx = 3 * n;
  const auto xi = [](int i) { return 2 * i; };
  const auto yi = [](int i) { return 2 * i + 1; };
  const auto ri = [n](int i) { return 2 * n + i; };

  std::vector<double> lo(nv, 0.0), hi(nv, 0.0);
  for (int i = 0; i < n; ++i) {
    lo[xi(i)] = 0.0;
    hi[xi(i)] = 1.0;
    lo[yi(i)] = 0.0;
    hi[yi(i)] = 2.0;
    lo[ri(i)] = 0.0;
    hi[ri(i)] = 0.5;
  }
  if (variant == RectVariant::square) {
    lo[alpha_idx] = 1.0;
    hi[alpha_idx] = 1.0;
  } else {
    lo[alpha_idx] = 1e-4;  // closed stand-in for the strict 0 < alpha
    hi[alpha_idx] = 1.0;
  }

  std::vector<std::string> var_labels;
  var_labels.reserve(nv);
  for (int i = 0; i < n; ++i) {
    var_labels.push_back("x(" + std::to_string(i) + ")");
    var_labels.push_back("y(" + std::to_string(i) + ")");
  }
  for (int i = 0; i < n; ++i)
    var_labels.push_back("r(" + std::to_string(i) + ")");
  var_labels.push_back("alpha");

  SmoothFunction obj{
      [n, ri](std::span<const double> x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x[ri(i)];
        return s;
      },
      [n, ri](std::span<const double>, std::vector<GradEntry>& g) {
        for (int i = 0; i < n; ++i) g.push_back({ri(i), 1.0});
      }};

  std::vector<Constraint> cons;
  cons.reserve(circles_num_constraints(n));
  for (int i = 0; i < n; ++i) {
    const int x_i = xi(i), y_i = yi(i), r_i = ri(i);
    cons.push_back({ConstraintKind::inequality,
                    {[r_i, x_i](std::span<const double> x) {
                       return x[r_i] - x[x_i];
                     },
                     [r_i, x_i](std::span<const double>,
                                std::vector<GradEntry>& g) {
                       g.push_back({r_i, 1.0});
                       g.push_back({x_i, -1.0});
                     }},
                    "contain_left(" + std::to_string(i) + ")"});
    cons.push_back({ConstraintKind::inequality,
                    {[r_i, x_i, alpha_idx](std::span<const double> x) {
                       return x[x_i] + x[r_i] - x[alpha_idx];
                     },
                     [r_i, x_i, alpha_idx](std::span<const double>,
                                           std::vector<GradEntry>& g) {
                       g.push_back({x_i, 1.0});
                       g.push_back({r_i, 1.0});
                       g.push_back({alpha_idx, -1.0});
                     }},
                    "contain_right(" + std::to_string(i) + ")"});
    cons.push_back({ConstraintKind::inequality,
                    {[r_i, y_i](std::span<const double> x) {
                       return x[r_i] - x[y_i];
                     },
                     [r_i, y_i](std::span<const double>,
                                std::vector<GradEntry>& g) {
                       g.push_back({r_i, 1.0});
                       g.push_back({y_i, -1.0});
                     }},
                    "contain_bottom(" + std::to_string(i) + ")"});
    cons.push_back({ConstraintKind::inequality,
                    {[r_i, y_i, alpha_idx](std::span<const double> x) {
                       return x[y_i] + x[r_i] + x[alpha_idx] - 2.0;
                     },
                     [r_i, y_i, alpha_idx](std::span<const double>,
                                           std::vector<GradEntry>& g) {
                       g.push_back({y_i, 1.0});
                       g.push_back({r_i, 1.0});
                       g.push_back({alpha_idx, 1.0});
                     }},
                    "contain_top(" + std::to_string(i) + ")"});
    cons.push_back({ConstraintKind::inequality,
                    {[r_i, alpha_idx](std::span<const double> x) {
                       return x[r_i] - 0.5 * x[alpha_idx];
                     },
                     [r_i, alpha_idx](std::span<const double>,
                                      std::vector<GradEntry>& g) {
                       g.push_back({r_i, 1.0});
                       g.push_back({alpha_idx, -0.5});
                     }},
                    "radius_cap(" + std::to_string(i) + ")"});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int x_i = xi(i), y_i = yi(i), r_i = ri(i);
      const int x_j = xi(j), y_j = yi(j), r_j = ri(j);
      cons.push_back(
          {ConstraintKind::inequality,
           {[=](std::span<const double> x) {
              const double dx = x[x_i] - x[x_j];
              const double dy = x[y_i] - x[y_j];
              const double rr = x[r_i] + x[r_j];
              return rr * rr - dx * dx - dy * dy;
            },
            [=](std::span<const double> x, std::vector<GradEntry>& g) {
              const double dx = x[x_i] - x[x_j];
              const double dy = x[y_i] - x[y_j];
              const double rr = x[r_i] + x[r_j];
              g.push_back({x_i, -2.0 * dx});
              g.push_back({x_j, 2.0 * dx});
              g.push_back({y_i, -2.0 * dy});
              g.push_back({y_j, 2.0 * dy});
              g.push_back({r_i, 2.0 * rr});
              g.push_back({r_j, 2.0 * rr});
            }},
           idx2("no_overlap", i, j)});
    }
  }

  return NlpProblem(std::move(lo), std::move(hi), Sense::maximize,
                    std::move(obj), std::move(cons), std::move(var_labels));
}

// ---------------------------------------------------------------------------
// Unit hexagons in a hexagon
// ---------------------------------------------------------------------------

namespace {

// sin(m*pi/6) and cos(m*pi/6); hexagon angles are all multiples of pi/6 away
// from theta, so sin(theta + m*pi/6) = sin(theta)*kCosTab[m] +
// cos(theta)*kSinTab[m] needs one sincos per hexagon instead of one per term.
constexpr double kSinTab[12] = {0.0,           0.5,  kHexApothem,  1.0,
                                kHexApothem,   0.5,  0.0,          -0.5,
                                -kHexApothem,  -1.0, -kHexApothem, -0.5};
constexpr double kCosTab[12] = {1.0,           kHexApothem,  0.5,  0.0,
                                -0.5,          -kHexApothem, -1.0, -kHexApothem,
                                -0.5,          0.0,          0.5,  kHexApothem};

struct HexLayout {
  int n;
  HexFormulation form;
  int R = 0;
  int xc(int i) const { return 1 + 2 * i; }
  int yc(int i) const { return 2 + 2 * i; }
  int th(int i) const { return 1 + 2 * n + i; }
  int a(int i, int j) const { return 1 + 3 * n + 6 * i + j; }
  int b(int i, int j) const { return 1 + 9 * n + 6 * i + j; }
  int c(int i, int j) const { return 1 + 15 * n + 6 * i + j; }
  int lam(int p, int k) const {
    const int base = form == HexFormulation::full ? 1 + 21 * n : 1 + 3 * n;
    return base + 12 * p + k;
  }
};

void add_containment(std::vector<Constraint>& cons, const HexLayout& L) {
  for (int i = 0; i < L.n; ++i) {
    const int x_i = L.xc(i), y_i = L.yc(i), t_i = L.th(i);
    for (int j = 0; j < 6; ++j) {
      const double sv = kSinTab[2 * j + 1];  // vertex phase (j + 0.5)*pi/3
      const double cv = kCosTab[2 * j + 1];
      for (int k = 0; k < 6; ++k) {
        const double sk = kSinTab[2 * k];
        const double ck = kCosTab[2 * k];
        cons.push_back(
            {ConstraintKind::inequality,
             {[=](std::span<const double> x) {
                const double st = std::sin(x[t_i]), ct = std::cos(x[t_i]);
                const double su = st * cv + ct * sv;
                const double cu = ct * cv - st * sv;
                return -(x[L.R] * kHexApothem + sk * (x[x_i] + su) +
                         ck * (x[y_i] + cu));
              },
              [=](std::span<const double> x, std::vector<GradEntry>& g) {
                const double st = std::sin(x[t_i]), ct = std::cos(x[t_i]);
                const double su = st * cv + ct * sv;
                const double cu = ct * cv - st * sv;
                g.push_back({L.R, -kHexApothem});
                g.push_back({x_i, -sk});
                g.push_back({y_i, -ck});
                g.push_back({t_i, -(sk * cu - ck * su)});
              }},
             idx3("vertex_in_outer", i, j, k)});
      }
    }
  }
}

void add_farkas_full(std::vector<Constraint>& cons, const HexLayout& L) {
  for (int i = 0; i < L.n; ++i) {
    for (int j = i + 1; j < L.n; ++j) {
      const int p = pair_index(L.n, i, j);
      cons.push_back({ConstraintKind::equality,
                      {[=](std::span<const double> x) {
                         double s = -1.0;
                         for (int k = 0; k < 12; ++k) s += x[L.lam(p, k)];
                         return s;
                       },
                       [=](std::span<const double>,
                           std::vector<GradEntry>& g) {
                         for (int k = 0; k < 12; ++k)
                           g.push_back({L.lam(p, k), 1.0});
                       }},
                      idx2("farkas_sum", i, j)});
      for (const bool is_x : {true, false}) {
        cons.push_back(
            {ConstraintKind::equality,
             {[=](std::span<const double> x) {
                double s = 0.0;
                for (int k = 0; k < 6; ++k) {
                  const int ai = is_x ? L.a(i, k) : L.b(i, k);
                  const int aj = is_x ? L.a(j, k) : L.b(j, k);
                  s += x[L.lam(p, k)] * x[ai] + x[L.lam(p, k + 6)] * x[aj];
                }
                return s;
              },
              [=](std::span<const double> x, std::vector<GradEntry>& g) {
                for (int k = 0; k < 6; ++k) {
                  const int ai = is_x ? L.a(i, k) : L.b(i, k);
                  const int aj = is_x ? L.a(j, k) : L.b(j, k);
                  g.push_back({L.lam(p, k), x[ai]});
                  g.push_back({L.lam(p, k + 6), x[aj]});
                  g.push_back({ai, x[L.lam(p, k)]});
                  g.push_back({aj, x[L.lam(p, k + 6)]});
                }
              }},
             is_x ? idx2("farkas_axis_x", i, j) : idx2("farkas_axis_y", i, j)});
      }
      cons.push_back(
          {ConstraintKind::inequality,
           {[=](std::span<const double> x) {
              double s = 0.0;
              for (int k = 0; k < 6; ++k) {
                s += x[L.lam(p, k)] * x[L.c(i, k)] +
                     x[L.lam(p, k + 6)] * x[L.c(j, k)];
              }
              return -s;
            },
            [=](std::span<const double> x, std::vector<GradEntry>& g) {
              for (int k = 0; k < 6; ++k) {
                g.push_back({L.lam(p, k), -x[L.c(i, k)]});
                g.push_back({L.lam(p, k + 6), -x[L.c(j, k)]});
                g.push_back({L.c(i, k), -x[L.lam(p, k)]});
                g.push_back({L.c(j, k), -x[L.lam(p, k + 6)]});
              }
            }},
           idx2("farkas_sep", i, j)});
    }
  }
}

void add_farkas_reduced(std::vector<Constraint>& cons, const HexLayout& L) {
  for (int i = 0; i < L.n; ++i) {
    for (int j = i + 1; j < L.n; ++j) {
      const int p = pair_index(L.n, i, j);
      const int xi = L.xc(i), yi = L.yc(i), ti = L.th(i);
      const int xj = L.xc(j), yj = L.yc(j), tj = L.th(j);
      cons.push_back({ConstraintKind::equality,
                      {[=](std::span<const double> x) {
                         double s = -1.0;
                         for (int k = 0; k < 12; ++k) s += x[L.lam(p, k)];
                         return s;
                       },
                       [=](std::span<const double>,
                           std::vector<GradEntry>& g) {
                         for (int k = 0; k < 12; ++k)
                           g.push_back({L.lam(p, k), 1.0});
                       }},
                      idx2("farkas_sum", i, j)});
      for (const bool is_x : {true, false}) {
        cons.push_back(
            {ConstraintKind::equality,
             {[=](std::span<const double> x) {
                const double sti = std::sin(x[ti]), cti = std::cos(x[ti]);
                const double stj = std::sin(x[tj]), ctj = std::cos(x[tj]);
                double s = 0.0;
                for (int k = 0; k < 6; ++k) {
                  const double sk = kSinTab[2 * k], ck = kCosTab[2 * k];
                  const double ni = is_x ? sti * ck + cti * sk
                                         : cti * ck - sti * sk;
                  const double nj = is_x ? stj * ck + ctj * sk
                                         : ctj * ck - stj * sk;
                  s += x[L.lam(p, k)] * ni + x[L.lam(p, k + 6)] * nj;
                }
                return s;
              },
              [=](std::span<const double> x, std::vector<GradEntry>& g) {
                const double sti = std::sin(x[ti]), cti = std::cos(x[ti]);
                const double stj = std::sin(x[tj]), ctj = std::cos(x[tj]);
                double dti = 0.0, dtj = 0.0;
                for (int k = 0; k < 6; ++k) {
                  const double sk = kSinTab[2 * k], ck = kCosTab[2 * k];
                  const double si = sti * ck + cti * sk;
                  const double coi = cti * ck - sti * sk;
                  const double sj = stj * ck + ctj * sk;
                  const double coj = ctj * ck - stj * sk;
                  g.push_back({L.lam(p, k), is_x ? si : coi});
                  g.push_back({L.lam(p, k + 6), is_x ? sj : coj});
                  dti += x[L.lam(p, k)] * (is_x ? coi : -si);
                  dtj += x[L.lam(p, k + 6)] * (is_x ? coj : -sj);
                }
                g.push_back({ti, dti});
                g.push_back({tj, dtj});
              }},
             is_x ? idx2("farkas_axis_x", i, j) : idx2("farkas_axis_y", i, j)});
      }
      cons.push_back(
          {ConstraintKind::inequality,
           {[=](std::span<const double> x) {
              const double sti = std::sin(x[ti]), cti = std::cos(x[ti]);
              const double stj = std::sin(x[tj]), ctj = std::cos(x[tj]);
              double s = 0.0;
              for (int k = 0; k < 6; ++k) {
                const double sk = kSinTab[2 * k], ck = kCosTab[2 * k];
                const double si = sti * ck + cti * sk;
                const double coi = cti * ck - sti * sk;
                const double sj = stj * ck + ctj * sk;
                const double coj = ctj * ck - stj * sk;
                const double ci = si * x[xi] + coi * x[yi] - kHexApothem;
                const double cj = sj * x[xj] + coj * x[yj] - kHexApothem;
                s += x[L.lam(p, k)] * ci + x[L.lam(p, k + 6)] * cj;
              }
              return -s;
            },
            [=](std::span<const double> x, std::vector<GradEntry>& g) {
              const double sti = std::sin(x[ti]), cti = std::cos(x[ti]);
              const double stj = std::sin(x[tj]), ctj = std::cos(x[tj]);
              double dxi = 0.0, dyi = 0.0, dti = 0.0;
              double dxj = 0.0, dyj = 0.0, dtj = 0.0;
              for (int k = 0; k < 6; ++k) {
                const double sk = kSinTab[2 * k], ck = kCosTab[2 * k];
                const double si = sti * ck + cti * sk;
                const double coi = cti * ck - sti * sk;
                const double sj = stj * ck + ctj * sk;
                const double coj = ctj * ck - stj * sk;
                const double ci = si * x[xi] + coi * x[yi] - kHexApothem;
                const double cj = sj * x[xj] + coj * x[yj] - kHexApothem;
                g.push_back({L.lam(p, k), -ci});
                g.push_back({L.lam(p, k + 6), -cj});
                const double li = x[L.lam(p, k)];
                const double lj = x[L.lam(p, k + 6)];
                dxi -= li * si;
                dyi -= li * coi;
                dti -= li * (coi * x[xi] - si * x[yi]);
                dxj -= lj * sj;
                dyj -= lj * coj;
                dtj -= lj * (coj * x[xj] - sj * x[yj]);
              }
              g.push_back({xi, dxi});
              g.push_back({yi, dyi});
              g.push_back({ti, dti});
              g.push_back({xj, dxj});
              g.push_back({yj, dyj});
              g.push_back({tj, dtj});
            }},
           idx2("farkas_sep", i, j)});
    }
  }
}

}  // namespace

NlpProblem build_hexagons(int n, HexFormulation form) {
  require(n >= 1, "hexagons: n must be >= 1");
  const HexLayout L{n, form};
  const int nv = hexagons_num_vars(n, form);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double center_box = 2.0 * root_n;

  std::vector<double> lo(nv), hi(nv);
  std::vector<std::string> var_labels(nv);
  lo[0] = root_n;  // area lower bound on the outer side length
  hi[0] = 2.0 * root_n;
  var_labels[0] = "R";
  for (int i = 0; i < n; ++i) {
    lo[L.xc(i)] = -center_box;
    hi[L.xc(i)] = center_box;
    lo[L.yc(i)] = -center_box;
    hi[L.yc(i)] = center_box;
    var_labels[L.xc(i)] = "x(" + std::to_string(i) + ")";
    var_labels[L.yc(i)] = "y(" + std::to_string(i) + ")";
    lo[L.th(i)] = 0.0;
    hi[L.th(i)] = kHexSector;
    var_labels[L.th(i)] = "theta(" + std::to_string(i) + ")";
  }
  if (form == HexFormulation::full) {
    const double c_box = 3.0 * root_n + 2.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 6; ++j) {
        lo[L.a(i, j)] = -1.0;
        hi[L.a(i, j)] = 1.0;
        lo[L.b(i, j)] = -1.0;
        hi[L.b(i, j)] = 1.0;
        lo[L.c(i, j)] = -c_box;
        hi[L.c(i, j)] = c_box;
        var_labels[L.a(i, j)] = idx2("a", i, j);
        var_labels[L.b(i, j)] = idx2("b", i, j);
        var_labels[L.c(i, j)] = idx2("c", i, j);
      }
    }
  }
  for (int p = 0; p < num_pairs(n); ++p) {
    for (int k = 0; k < 12; ++k) {
      lo[L.lam(p, k)] = 0.0;
      hi[L.lam(p, k)] = 1.0;
      var_labels[L.lam(p, k)] = idx2("lambda", p, k);
    }
  }

  SmoothFunction obj{[](std::span<const double> x) { return x[0]; },
                     [](std::span<const double>, std::vector<GradEntry>& g) {
                       g.push_back({0, 1.0});
                     }};

  std::vector<Constraint> cons;
  cons.reserve(hexagons_num_constraints(n, form));
  add_containment(cons, L);
  if (form == HexFormulation::full) {
    for (int i = 0; i < n; ++i) {
      const int ti = L.th(i), xi = L.xc(i), yi = L.yc(i);
      for (int j = 0; j < 6; ++j) {
        const double phase = j * kHexSector;
        const int ai = L.a(i, j), bi = L.b(i, j), ci = L.c(i, j);
        cons.push_back({ConstraintKind::equality,
                        {[=](std::span<const double> x) {
                           return x[ai] - std::sin(x[ti] + phase);
                         },
                         [=](std::span<const double> x,
                             std::vector<GradEntry>& g) {
                           g.push_back({ai, 1.0});
                           g.push_back({ti, -std::cos(x[ti] + phase)});
                         }},
                        idx2("side_normal_x", i, j)});
        cons.push_back({ConstraintKind::equality,
                        {[=](std::span<const double> x) {
                           return x[bi] - std::cos(x[ti] + phase);
                         },
                         [=](std::span<const double> x,
                             std::vector<GradEntry>& g) {
                           g.push_back({bi, 1.0});
                           g.push_back({ti, std::sin(x[ti] + phase)});
                         }},
                        idx2("side_normal_y", i, j)});
        cons.push_back({ConstraintKind::equality,
                        {[=](std::span<const double> x) {
                           return x[ci] - x[ai] * x[xi] - x[bi] * x[yi] +
                                  kHexApothem;
                         },
                         [=](std::span<const double> x,
                             std::vector<GradEntry>& g) {
                           g.push_back({ci, 1.0});
                           g.push_back({ai, -x[xi]});
                           g.push_back({bi, -x[yi]});
                           g.push_back({xi, -x[ai]});
                           g.push_back({yi, -x[bi]});
                         }},
                        idx2("side_offset", i, j)});
      }
    }
    add_farkas_full(cons, L);
  } else {
    add_farkas_reduced(cons, L);
  }

  return NlpProblem(std::move(lo), std::move(hi), Sense::minimize,
                    std::move(obj), std::move(cons), std::move(var_labels));
}

// ---------------------------------------------------------------------------
// Codecs
// ---------------------------------------------------------------------------

std::vector<double> encode_minmax(const PointConfig& config, MinMaxForm form) {
  require(config.n >= 2 && config.d >= 1, "encode_minmax: bad dimensions");
  require(static_cast<int>(config.coords.size()) == config.n * config.d,
          "encode_minmax: coordinate count mismatch");
  std::vector<double> x(config.coords);
  x.push_back(form == MinMaxForm::primal ? config.t_max : config.t_min);
  return x;
}

PointConfig decode_minmax(int n, int d, MinMaxForm form,
                          std::span<const double> x) {
  require(static_cast<int>(x.size()) == minmax_num_vars(n, d),
          "decode_minmax: vector length mismatch");
  PointConfig c;
  c.n = n;
  c.d = d;
  c.coords.assign(x.begin(), x.begin() + n * d);
  if (form == MinMaxForm::primal) {
    c.t_min = 1.0;
    c.t_max = x[n * d];
  } else {
    c.t_max = 1.0;
    c.t_min = x[n * d];
  }
  return c;
}

std::vector<double> encode_circles(const CircleConfig& config) {
  require(config.n >= 1, "encode_circles: n must be >= 1");
  require(static_cast<int>(config.centers.size()) == config.n &&
              static_cast<int>(config.radii.size()) == config.n,
          "encode_circles: field sizes mismatch");
  std::vector<double> x;
  x.reserve(circles_num_vars(config.n));
  for (const Vec2& c : config.centers) {
    x.push_back(c.x);
    x.push_back(c.y);
  }
  for (double r : config.radii) x.push_back(r);
  x.push_back(config.alpha);
  return x;
}

CircleConfig decode_circles(int n, RectVariant variant,
                            std::span<const double> x) {
  require(static_cast<int>(x.size()) == circles_num_vars(n),
          "decode_circles: vector length mismatch");
  CircleConfig c;
  c.variant = variant;
  c.n = n;
  c.centers.resize(n);
  c.radii.resize(n);
  for (int i = 0; i < n; ++i) c.centers[i] = {x[2 * i], x[2 * i + 1]};
  for (int i = 0; i < n; ++i) c.radii[i] = x[2 * n + i];
  c.alpha = x[3 * n];
  return c;
}

std::vector<double> encode_hexagons(const HexConfig& config,
                                    HexFormulation form) {
  const int n = config.n;
  require(n >= 1, "encode_hexagons: n must be >= 1");
  require(static_cast<int>(config.centers.size()) == n &&
              static_cast<int>(config.thetas.size()) == n &&
              static_cast<int>(config.farkas.size()) == num_pairs(n),
          "encode_hexagons: field sizes mismatch");
  const HexLayout L{n, form};
  std::vector<double> x(hexagons_num_vars(n, form), 0.0);
  x[0] = config.R;
  for (int i = 0; i < n; ++i) {
    x[L.xc(i)] = config.centers[i].x;
    x[L.yc(i)] = config.centers[i].y;
    x[L.th(i)] = config.thetas[i];
  }
  if (form == HexFormulation::full) {
    for (int i = 0; i < n; ++i) {
      const auto hs = hex_half_spaces({config.centers[i], config.thetas[i]});
      for (int j = 0; j < 6; ++j) {
        x[L.a(i, j)] = hs[j].a;
        x[L.b(i, j)] = hs[j].b;
        x[L.c(i, j)] = hs[j].c;
      }
    }
  }
  for (int p = 0; p < num_pairs(n); ++p)
    for (int k = 0; k < 12; ++k) x[L.lam(p, k)] = config.farkas[p][k];
  return x;
}

HexConfig decode_hexagons(int n, HexFormulation form,
                          std::span<const double> x) {
  require(static_cast<int>(x.size()) == hexagons_num_vars(n, form),
          "decode_hexagons: vector length mismatch");
  const HexLayout L{n, form};
  HexConfig c;
  c.n = n;
  c.R = x[0];
  c.centers.resize(n);
  c.thetas.resize(n);
  c.farkas.resize(num_pairs(n));
  for (int i = 0; i < n; ++i) {
    c.centers[i] = {x[L.xc(i)], x[L.yc(i)]};
    c.thetas[i] = x[L.th(i)];
  }
  for (int p = 0; p < num_pairs(n); ++p)
    for (int k = 0; k < 12; ++k) c.farkas[p][k] = x[L.lam(p, k)];
  return c;
}

PointConfig primal_to_dual(const PointConfig& config) {
  PointConfig out = config;
  const double scale = 1.0 / std::sqrt(config.t_max);
  for (double& v : out.coords) v *= scale;
  out.t_min = 1.0 / config.t_max;
  out.t_max = 1.0;
  return out;
}

PointConfig dual_to_primal(const PointConfig& config) {
  PointConfig out = config;
  const double scale = 1.0 / std::sqrt(config.t_min);
  for (double& v : out.coords) v *= scale;
  out.t_max = 1.0 / config.t_min;
  out.t_min = 1.0;
  return out;
}

// ---------------------------------------------------------------------------
// ModelSpec plumbing
// ---------------------------------------------------------------------------

NlpProblem build(const ModelSpec& spec) {
  switch (spec.family) {
    case Family::minmax:
      return spec.form == MinMaxForm::primal
                 ? build_minmax_primal(spec.n, spec.d, spec.pin_first)
                 : build_minmax_dual(spec.n, spec.d, spec.pin_first);
    case Family::circles:
      return build_circles(spec.n, spec.variant);
    case Family::hexagons:
      return build_hexagons(spec.n, spec.hexform);
  }
  throw std::invalid_argument("build: unknown family");
}

Sense objective_sense(const ModelSpec& spec) {
  switch (spec.family) {
    case Family::minmax:
      return spec.form == MinMaxForm::primal ? Sense::minimize
                                             : Sense::maximize;
    case Family::circles:
      return Sense::maximize;
    case Family::hexagons:
      return Sense::minimize;
  }
  throw std::invalid_argument("objective_sense: unknown family");
}

AnyConfig decode(const ModelSpec& spec, std::span<const double> x) {
  switch (spec.family) {
    case Family::minmax:
      return decode_minmax(spec.n, spec.d, spec.form, x);
    case Family::circles:
      return decode_circles(spec.n, spec.variant, x);
    case Family::hexagons:
      return decode_hexagons(spec.n, spec.hexform, x);
  }
  throw std::invalid_argument("decode: unknown family");
}

std::vector<double> encode(const ModelSpec& spec, const AnyConfig& config) {
  switch (spec.family) {
    case Family::minmax:
      return encode_minmax(std::get<PointConfig>(config), spec.form);
    case Family::circles:
      return encode_circles(std::get<CircleConfig>(config));
    case Family::hexagons:
      return encode_hexagons(std::get<HexConfig>(config), spec.hexform);
  }
  throw std::invalid_argument("encode: unknown family");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::minmax:
      return "minmax";
    case Family::circles:
      return "circles";
    case Family::hexagons:
      return "hexagons";
  }
  return "?";
}

std::string variant_name(RectVariant variant) {
  return variant == RectVariant::square ? "square" : "rectangle";
}

std::string form_name(MinMaxForm form) {
  return form == MinMaxForm::primal ? "primal" : "dual";
}

// ---------------------------------------------------------------------------
// Honeycomb sites (geometry.hpp)
// ---------------------------------------------------------------------------

std::vector<Vec2> honeycomb_sites(int n, double spacing) {
  require(n >= 1, "honeycomb_sites: n must be >= 1");
  const double scale = spacing / std::sqrt(3.0);
  const int m = static_cast<int>(std::ceil(std::sqrt(n))) + 2;
  struct Site {
    double d2;
    int p, q;
    Vec2 c;
  };
  std::vector<Site> sites;
  sites.reserve((2 * m + 1) * (2 * m + 1));
  const double root3 = std::sqrt(3.0);
  for (int p = -m; p <= m; ++p) {
    for (int q = -m; q <= m; ++q) {
      const double cx = 1.5 * p * scale;
      const double cy = (root3 * q + (std::abs(p) % 2) * root3 / 2.0) * scale;
      sites.push_back({cx * cx + cy * cy, p, q, {cx, cy}});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  });
  std::vector<Vec2> out;
  out.reserve(n);
  Vec2 centroid{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    out.push_back(sites.at(i).c);
    centroid = centroid + sites.at(i).c;
  }
  centroid = (1.0 / n) * centroid;
  for (Vec2& c : out) c = c - centroid;
  return out;
}

}  // namespace geopack

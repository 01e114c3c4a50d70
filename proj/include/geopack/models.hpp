#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "geopack/geometry.hpp"
#include "geopack/nlp.hpp"

namespace geopack {

enum class Family { minmax, circles, hexagons };
enum class MinMaxForm { primal, dual };
enum class RectVariant { square, rectangle };

// The hexagon model ships in two algebraically equivalent flavors. `full`
// keeps the side normals a, b and offsets c as variables tied down by
// trigonometric equality constraints; `reduced` substitutes them away and
// keeps only R, centers, angles and the Farkas multipliers.
enum class HexFormulation { full, reduced };

// n points in d dimensions plus the squared-distance scalars. In the primal
// form t_min is fixed to 1, in the dual form t_max is fixed to 1; the squared
// ratio is t_max / t_min.
struct PointConfig {
  int n = 0;
  int d = 0;
  std::vector<double> coords;  // point-major: coords[i*d + k]
  double t_min = 1.0;
  double t_max = 1.0;

  double at(int i, int k) const { return coords.at(i * d + k); }
  double& at(int i, int k) { return coords.at(i * d + k); }
};

// n circles of variable radius in the rectangle [0, alpha] x [0, 2 - alpha].
struct CircleConfig {
  RectVariant variant = RectVariant::square;
  int n = 0;
  std::vector<Vec2> centers;
  std::vector<double> radii;
  double alpha = 1.0;
};

// Outer hexagon side R plus poses of the n unit inner hexagons and, for each
// unordered pair, the 12 Farkas separation multipliers (pairs in
// lexicographic (i, j) order, i < j).
struct HexConfig {
  int n = 0;
  double R = 1.0;
  std::vector<Vec2> centers;
  std::vector<double> thetas;
  std::vector<std::array<double, 12>> farkas;
};

using AnyConfig = std::variant<PointConfig, CircleConfig, HexConfig>;

inline int num_pairs(int n) { return n * (n - 1) / 2; }

// Index of unordered pair (i, j), i < j, in lexicographic order.
inline int pair_index(int n, int i, int j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// ---------------------------------------------------------------------------
// Builders. Variable layouts are fixed and documented here; encode/decode
// below are the authoritative codecs for them.
//
//   minmax (primal/dual): [ x_{0,0} .. x_{n-1,d-1}, t ]
//       with t = t_max (primal, minimized, box [1, 4 n^2 d]) or
//            t = t_min (dual, maximized, box [0, 1]).
//       Coordinates boxed to [-n, n] (primal) or [-1.5, 1.5] (dual); the
//       paper's models are unbounded, the boxes keep multi-start sampling
//       well-defined. Per pair i<j two inequalities: squared distance >= 1
//       (primal; >= t_min dual) and <= t_max (primal; <= 1 dual).
//
//   circles: [ x_0, y_0, x_1, y_1, .., r_0 .. r_{n-1}, alpha ]
//       alpha is a variable in both variants, fixed by its box [1, 1] for
//       the square. Five containment inequalities per circle plus one
//       non-overlap inequality per pair. The strict 0 < alpha becomes
//       alpha >= 1e-4.
//
//   hexagons full: [ R, x_0, y_0, .., theta_0 .., a-block (6n), b-block (6n),
//                    c-block (6n), lambda-block (12 per pair) ]
//       a/b/c blocks are hexagon-major then side-major. 36 containment
//       inequalities per hexagon, 18 defining equalities per hexagon, and
//       per pair the Farkas system: 3 equalities plus 1 inequality.
//
//   hexagons reduced: [ R, centers, thetas, lambda-block ] with the same
//       constraints but a, b, c replaced by their closed forms.
//
//   R is boxed to [sqrt(n), 2 sqrt(n)] and centers to [-2 sqrt(n), 2 sqrt(n)].
// ---------------------------------------------------------------------------

// pin_first fixes point 0 at the origin (box [0, 0] on its coordinates) to
// remove translation invariance; off by default, the local solver tolerates
// the invariance and the unpinned count matches the documented formulas.
NlpProblem build_minmax_primal(int n, int d, bool pin_first = false);
NlpProblem build_minmax_dual(int n, int d, bool pin_first = false);
NlpProblem build_circles(int n, RectVariant variant);
NlpProblem build_hexagons(int n, HexFormulation form = HexFormulation::full);

// Closed-form counts used by the builders (and checked in tests).
int minmax_num_vars(int n, int d);
int minmax_num_constraints(int n);
int circles_num_vars(int n);
int circles_num_constraints(int n);
int hexagons_num_vars(int n, HexFormulation form);
int hexagons_num_constraints(int n, HexFormulation form);

// Codecs between structured configurations and flat variable vectors, exact
// bijections for the layouts above. Dimension mismatches throw
// std::invalid_argument.
std::vector<double> encode_minmax(const PointConfig& config, MinMaxForm form);
PointConfig decode_minmax(int n, int d, MinMaxForm form,
                          std::span<const double> x);
std::vector<double> encode_circles(const CircleConfig& config);
CircleConfig decode_circles(int n, RectVariant variant,
                            std::span<const double> x);
std::vector<double> encode_hexagons(const HexConfig& config,
                                    HexFormulation form);
HexConfig decode_hexagons(int n, HexFormulation form,
                          std::span<const double> x);

// Scale-invariance transforms between the two min-max formulations: a
// feasible primal solution with value t_max maps to a feasible dual solution
// with t_min = 1/t_max by scaling all coordinates, and vice versa.
PointConfig primal_to_dual(const PointConfig& config);
PointConfig dual_to_primal(const PointConfig& config);

// Instance descriptor used by the CLI, the sampler and the reporting layer.
struct ModelSpec {
  Family family = Family::minmax;
  int n = 0;
  int d = 2;                                     // minmax only
  MinMaxForm form = MinMaxForm::primal;          // minmax only
  bool pin_first = false;                        // minmax only
  RectVariant variant = RectVariant::square;     // circles only
  HexFormulation hexform = HexFormulation::reduced;  // hexagons only
};

NlpProblem build(const ModelSpec& spec);
Sense objective_sense(const ModelSpec& spec);
AnyConfig decode(const ModelSpec& spec, std::span<const double> x);
std::vector<double> encode(const ModelSpec& spec, const AnyConfig& config);

std::string family_name(Family family);
std::string variant_name(RectVariant variant);
std::string form_name(MinMaxForm form);

}  // namespace geopack

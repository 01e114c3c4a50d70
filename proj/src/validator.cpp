#include "geopack/validator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace geopack {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void note(std::vector<Violation>& out, std::string label, double magnitude,
          double tol) {
  if (magnitude > tol) out.push_back({std::move(label), magnitude});
}

std::string pair_label(const char* stem, int i, int j) {
  return std::string(stem) + "(" + std::to_string(i) + "," +
         std::to_string(j) + ")";
}

// Increments a pure digit string by one, in place, growing on overflow.
void increment_digits(std::string& digits) {
  for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
    if (digits[k] != '9') {
      ++digits[k];
      return;
    }
    digits[k] = '0';
  }
  digits.insert(digits.begin(), '1');
}

}  // namespace

std::string report_value(Sense sense, double raw) {
  if (!std::isfinite(raw))
    throw std::invalid_argument("report_value: non-finite value");

  char buf[64];
  const auto rc = std::to_chars(buf, buf + sizeof buf, raw);
  std::string s(buf, rc.ptr);

  bool neg = false;
  if (!s.empty() && s[0] == '-') {
    neg = true;
    s.erase(0, 1);
  }
  int exp10 = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    exp10 = std::stoi(s.substr(e + 1));
    s.erase(e);
  }
  int point = static_cast<int>(s.size());
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    point = static_cast<int>(dot);
    s.erase(dot, 1);
  }
  point += exp10;

  // s now holds the significant digits with the decimal point sitting after
  // the first `point` of them (possibly outside the string on either side).
  const int len = static_cast<int>(s.size());
  std::string int_part;
  if (point <= 0) {
    int_part = "0";
  } else {
    int_part = s.substr(0, std::min(point, len));
    int_part.append(std::max(0, point - len), '0');
  }
  std::string frac(5, '0');
  for (int j = 0; j < 5; ++j) {
    const int idx = point + j;
    if (idx >= 0 && idx < len) frac[j] = s[idx];
  }
  bool rest = false;
  for (int idx = std::max(point + 5, 0); idx < len; ++idx)
    rest = rest || s[idx] != '0';

  const bool toward_pos_inf = sense == Sense::minimize;
  if (rest && (toward_pos_inf != neg)) {
    std::string all = int_part + frac;
    increment_digits(all);
    frac = all.substr(all.size() - 5);
    int_part = all.substr(0, all.size() - 5);
  }

  const bool zero =
      int_part.find_first_not_of('0') == std::string::npos &&
      frac.find_first_not_of('0') == std::string::npos;
  return (neg && !zero ? "-" : "") + int_part + "." + frac;
}

// ---------------------------------------------------------------------------
// Hexagon pair geometry.

double hex_pair_gap(const HexPose& a, const HexPose& b) {
  const auto ha = hex_half_spaces(a);
  const auto hb = hex_half_spaces(b);
  const auto va = hex_vertices(a);
  const auto vb = hex_vertices(b);

  double best = -kInf;
  for (int k = 0; k < 6; ++k) {
    double reach_b = -kInf;
    double reach_a = -kInf;
    for (int j = 0; j < 6; ++j) {
      reach_b = std::max(reach_b, ha[k].a * vb[j].x + ha[k].b * vb[j].y);
      reach_a = std::max(reach_a, hb[k].a * va[j].x + hb[k].b * va[j].y);
    }
    best = std::max(best, ha[k].c - reach_b);
    best = std::max(best, hb[k].c - reach_a);
  }
  return best;
}

OverlapClass hex_overlap_oracle(const HexPose& a, const HexPose& b,
                                double tol) {
  const double gap = hex_pair_gap(a, b);
  if (gap > tol) return OverlapClass::disjoint;
  if (gap < -tol) return OverlapClass::overlapping;
  return OverlapClass::touching;
}

std::optional<FarkasCertificate> find_farkas(const HexPose& a,
                                             const HexPose& b, double tol) {
  const auto ha = hex_half_spaces(a);
  const auto hb = hex_half_spaces(b);
  std::array<HalfSpace, 12> rows;
  std::copy(ha.begin(), ha.end(), rows.begin());
  std::copy(hb.begin(), hb.end(), rows.begin() + 6);

  // The LP max sum(l*c) s.t. sum(l) = 1, sum(l*a) = sum(l*b) = 0, l >= 0 has
  // an optimal basic solution supported on at most three rows; enumerate
  // every 3x3 basis by Cramer's rule.
  double best_obj = -kInf;
  std::array<double, 12> best_l{};
  for (int p = 0; p < 12; ++p)
    for (int q = p + 1; q < 12; ++q)
      for (int r = q + 1; r < 12; ++r) {
        const double a1 = rows[p].a, a2 = rows[q].a, a3 = rows[r].a;
        const double b1 = rows[p].b, b2 = rows[q].b, b3 = rows[r].b;
        const double det = (a2 * b3 - a3 * b2) - (a1 * b3 - a3 * b1) +
                           (a1 * b2 - a2 * b1);
        if (std::abs(det) < 1e-10) continue;
        const double lp = (a2 * b3 - a3 * b2) / det;
        const double lq = -(a1 * b3 - a3 * b1) / det;
        const double lr = (a1 * b2 - a2 * b1) / det;
        if (lp < -1e-12 || lq < -1e-12 || lr < -1e-12) continue;
        const double obj = lp * rows[p].c + lq * rows[q].c + lr * rows[r].c;
        if (obj > best_obj) {
          best_obj = obj;
          best_l.fill(0.0);
          best_l[p] = std::max(lp, 0.0);
          best_l[q] = std::max(lq, 0.0);
          best_l[r] = std::max(lr, 0.0);
        }
      }

  if (!(best_obj >= -tol)) return std::nullopt;

  FarkasCertificate cert;
  cert.lambda = best_l;
  double sum = 0.0, ax = 0.0, ay = 0.0, sep = 0.0;
  for (int k = 0; k < 12; ++k) {
    sum += best_l[k];
    ax += best_l[k] * rows[k].a;
    ay += best_l[k] * rows[k].b;
    sep += best_l[k] * rows[k].c;
  }
  cert.sum_residual = std::abs(sum - 1.0);
  cert.axis_residual = std::max(std::abs(ax), std::abs(ay));
  cert.sep_value = sep;
  if (cert.sum_residual > 1e-9 || cert.axis_residual > 1e-9)
    return std::nullopt;
  return cert;
}

// ---------------------------------------------------------------------------
// Family validators.

Verdict validate_minmax(const PointConfig& config, double tol) {
  const int n = config.n;
  const int d = config.d;
  if (n < 2 || d < 1)
    throw std::invalid_argument("validate_minmax: need n >= 2, d >= 1");
  if (static_cast<int>(config.coords.size()) != n * d)
    throw std::invalid_argument("validate_minmax: coords size mismatch");

  Verdict v;
  double min2 = kInf, max2 = 0.0;
  int min_i = 0, min_j = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = config.at(i, k) - config.at(j, k);
        d2 += diff * diff;
      }
      if (d2 < min2) {
        min2 = d2;
        min_i = i;
        min_j = j;
      }
      max2 = std::max(max2, d2);
    }

  const double ratio = max2 / min2;
  if (!std::isfinite(ratio) || min2 <= 0.0) {
    v.feasible = false;
    v.max_violation = 1.0;  // min squared distance >= 1 after unit rescale
    v.certified_objective = kInf;
    v.violations.push_back({pair_label("min_dist", min_i, min_j), 1.0});
    return v;
  }

  // Pre-repair diagnostics against the stored normalization.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = config.at(i, k) - config.at(j, k);
        d2 += diff * diff;
      }
      note(v.violations, pair_label("min_dist", i, j), config.t_min - d2, tol);
      note(v.violations, pair_label("max_dist", i, j), d2 - config.t_max, tol);
    }

  // Repair: rescale so the min squared distance is exactly 1; the ratio is
  // scale invariant, so every constraint is then satisfied by construction.
  v.feasible = true;
  v.max_violation = 0.0;
  v.certified_objective = ratio;
  v.reported_value = report_value(Sense::minimize, ratio);
  return v;
}

Verdict validate_circles(const CircleConfig& config, double tol) {
  const int n = config.n;
  if (n < 1) throw std::invalid_argument("validate_circles: need n >= 1");
  if (static_cast<int>(config.centers.size()) != n ||
      static_cast<int>(config.radii.size()) != n)
    throw std::invalid_argument("validate_circles: size mismatch");

  Verdict v;
  const double alpha = config.alpha;
  const bool bad_alpha =
      !(alpha > 0.0) || alpha > 1.0 + tol ||
      (config.variant == RectVariant::square && std::abs(alpha - 1.0) > tol);
  if (bad_alpha) {
    v.feasible = false;
    v.max_violation = kInf;
    v.violations.push_back({"alpha_range", std::abs(alpha - 1.0)});
    return v;
  }
  const double w = alpha;
  const double h = 2.0 - alpha;

  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) {
    r[i] = config.radii[i];
    note(v.violations, "radius_negative(" + std::to_string(i) + ")", -r[i],
         tol);
    r[i] = std::max(r[i], 0.0);
  }

  // Repair covers only per-circle overshoot (walls and the radius cap):
  // shrinking all radii by the worst such margin restores containment when
  // the centers sit inside the rectangle. Pairwise overlap beyond tol is not
  // repairable and leaves the verdict infeasible; the shrink may still clear
  // sub-tolerance contact violations as a side effect.
  double delta = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto tag = std::to_string(i);
    const double c[5] = {r[i] - config.centers[i].x,
                         config.centers[i].x + r[i] - w,
                         r[i] - config.centers[i].y,
                         config.centers[i].y + r[i] - h, r[i] - alpha / 2.0};
    note(v.violations, "contain_left(" + tag + ")", c[0], tol);
    note(v.violations, "contain_right(" + tag + ")", c[1], tol);
    note(v.violations, "contain_bottom(" + tag + ")", c[2], tol);
    note(v.violations, "contain_top(" + tag + ")", c[3], tol);
    note(v.violations, "radius_cap(" + tag + ")", c[4], tol);
    for (const double m : c) delta = std::max(delta, m);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double m = r[i] + r[j] - norm(config.centers[i] - config.centers[j]);
      note(v.violations, pair_label("no_overlap", i, j), m, tol);
    }
  if (delta <= tol) delta = 0.0;  // within tolerance as claimed, no repair

  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    r[i] = std::max(r[i] - delta, 0.0);
    sum += r[i];
  }

  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    residual = std::max(residual, r[i] - config.centers[i].x);
    residual = std::max(residual, config.centers[i].x + r[i] - w);
    residual = std::max(residual, r[i] - config.centers[i].y);
    residual = std::max(residual, config.centers[i].y + r[i] - h);
    residual = std::max(residual, r[i] - alpha / 2.0);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      residual = std::max(
          residual, r[i] + r[j] - norm(config.centers[i] - config.centers[j]));

  v.max_violation = std::max(residual, 0.0);
  v.feasible = v.max_violation <= tol;
  v.certified_objective = sum;
  v.reported_value = report_value(Sense::maximize, sum);
  return v;
}

Verdict validate_hexagons(const HexConfig& config, double tol) {
  const int n = config.n;
  if (n < 1) throw std::invalid_argument("validate_hexagons: need n >= 1");
  if (static_cast<int>(config.centers.size()) != n ||
      static_cast<int>(config.thetas.size()) != n)
    throw std::invalid_argument("validate_hexagons: size mismatch");

  Verdict v;
  const auto outer = outer_hex_half_spaces(1.0);  // unit-R normals, offset -apothem

  // Containment: every vertex of every inner hexagon inside the outer one;
  // repair inflates R by the smallest amount restoring containment at the
  // certification tolerance, never below the stored claim. A configuration
  // whose worst containment violation is already within tol keeps its
  // claimed R (exact-contact optima would otherwise inflate by float noise).
  double needed = 0.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto verts =
        hex_vertices({config.centers[i], config.thetas[i]});
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        const double proj = outer[k].a * verts[j].x + outer[k].b * verts[j].y;
        needed = std::max(needed, -proj / kHexApothem);
        const double g = -(config.R * kHexApothem + proj);
        worst = std::max(worst, g);
        note(v.violations,
             "vertex_in_outer(" + std::to_string(i) + "," +
                 std::to_string(j) + "," + std::to_string(k) + ")",
             g, tol);
      }
  }
  const double R = worst <= tol
                       ? config.R
                       : std::max(config.R,
                                  needed - 0.5 * tol / kHexApothem);

  double penetration = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double gap = hex_pair_gap({config.centers[i], config.thetas[i]},
                                      {config.centers[j], config.thetas[j]});
      note(v.violations, pair_label("overlap", i, j), -gap, tol);
      penetration = std::max(penetration, -gap);
    }

  const double containment_residual =
      std::max(0.0, (needed - R) * kHexApothem);
  v.max_violation = std::max({penetration, containment_residual, 0.0});
  v.feasible = v.max_violation <= tol;
  v.certified_objective = R;
  v.reported_value = report_value(Sense::minimize, R);

  const double area_bound = std::sqrt(static_cast<double>(n));
  if (v.feasible && R < area_bound - tol) {
    v.feasible = false;
    v.violations.push_back({"area_lower_bound", area_bound - R});
    v.max_violation = std::max(v.max_violation, area_bound - R);
  }
  return v;
}

Verdict validate(const ModelSpec& spec, const AnyConfig& config, double tol) {
  switch (spec.family) {
    case Family::minmax:
      return validate_minmax(std::get<PointConfig>(config), tol);
    case Family::circles:
      return validate_circles(std::get<CircleConfig>(config), tol);
    case Family::hexagons:
      return validate_hexagons(std::get<HexConfig>(config), tol);
  }
  throw std::logic_error("validate: unknown family");
}

}  // namespace geopack

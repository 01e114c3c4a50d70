#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geopack/geometry.hpp"
#include "geopack/models.hpp"
#include "geopack/nlp.hpp"

namespace geopack {

struct Violation {
  std::string label;
  double magnitude = 0.0;
};

// feasible reflects the configuration after the family's pessimistic repair;
// violations list the pre-repair defects for diagnostics.
struct Verdict {
  bool feasible = false;
  double max_violation = 0.0;        // post-repair
  double certified_objective = 0.0;  // post-repair
  std::string reported_value;        // convention-rounded decimal string
  std::vector<Violation> violations;
};

enum class OverlapClass { disjoint, touching, overlapping };

struct FarkasCertificate {
  std::array<double, 12> lambda{};
  double sum_residual = 0.0;   // |sum(lambda) - 1|
  double axis_residual = 0.0;  // max |sum(lambda * a)|, |sum(lambda * b)|
  double sep_value = 0.0;      // sum(lambda * c), >= -tol for a certificate
};

// Exact min/max squared pairwise distances; repair rescales so the min
// squared distance is exactly 1. Ratio reported with the round-up convention.
Verdict validate_minmax(const PointConfig& config, double tol = 1e-9);

// Containment and pairwise separation from raw geometry; repair shrinks all
// radii uniformly by the worst margin. Sum reported with the floor convention.
Verdict validate_circles(const CircleConfig& config, double tol = 1e-9);

// Vertex containment plus pairwise disjointness via the geometric oracle
// (stored Farkas multipliers are never read); repair inflates R for
// containment only. R reported with the ceiling convention.
Verdict validate_hexagons(const HexConfig& config, double tol = 1e-9);

Verdict validate(const ModelSpec& spec, const AnyConfig& config,
                 double tol = 1e-9);

// Separating-axis gap over the 12 edge normals: positive iff disjoint,
// magnitude is the separation (or penetration when negative).
double hex_pair_gap(const HexPose& a, const HexPose& b);

OverlapClass hex_overlap_oracle(const HexPose& a, const HexPose& b,
                                double tol = 1e-9);

// Solves the 12-multiplier Farkas system by exhaustive vertex enumeration;
// returns the certificate maximizing sum(lambda * c), or nullopt when no
// vertex reaches sep_value >= -tol.
std::optional<FarkasCertificate> find_farkas(const HexPose& a,
                                             const HexPose& b,
                                             double tol = 1e-9);

// Pessimistic 5-decimal rounding: UP for minimization, DOWN for maximization,
// via exact decimal-string manipulation of the shortest round-trip form.
std::string report_value(Sense sense, double raw);

}  // namespace geopack

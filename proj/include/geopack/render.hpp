#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geopack/models.hpp"

namespace geopack {

// Pairs whose linear distance lies within `band` of the extreme distances.
struct ExtremePairs {
  double min_dist = 0.0;
  double max_dist = 0.0;
  std::vector<std::pair<int, int>> min_pairs;
  std::vector<std::pair<int, int>> max_pairs;
};

ExtremePairs minmax_extreme_pairs(const PointConfig& config,
                                  double band = 1e-9);

// Deterministic 1000x1000 SVG: identical input produces identical bytes.
// Min-max families draw max pairs red and min pairs blue (red wins when a
// pair is both); circles draw the rectangle plus every circle; hexagons draw
// the outer hexagon plus the inner ones with cycling fills. Throws
// std::invalid_argument for minmax with d > 2, which has no planar drawing.
std::string render_svg(const ModelSpec& spec, const AnyConfig& config);

}  // namespace geopack

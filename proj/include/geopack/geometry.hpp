#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace geopack {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Regular unit-side hexagon constants: apothem (center-to-edge distance) and
// the angular separation between adjacent vertices.
inline constexpr double kHexApothem = 0.86602540378443864676372317075293618;  // sqrt(3)/2
inline constexpr double kHexSector = kPi / 3.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// Half-plane a*x + b*y >= c with unit inward normal (a, b).
struct HalfSpace {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct HexPose {
  Vec2 center;
  double theta = 0.0;
};

// Vertices of a unit-side regular hexagon: center + (sin(theta+(j+0.5)*pi/3),
// cos(theta+(j+0.5)*pi/3)) for j = 0..5.
inline std::array<Vec2, 6> hex_vertices(const HexPose& pose) {
  std::array<Vec2, 6> v;
  for (int j = 0; j < 6; ++j) {
    const double u = pose.theta + (j + 0.5) * kHexSector;
    v[j] = {pose.center.x + std::sin(u), pose.center.y + std::cos(u)};
  }
  return v;
}

// Half-space representation of a unit-side hexagon. Side j has inward normal
// (sin(theta+j*pi/3), cos(theta+j*pi/3)) and offset such that the center
// satisfies every inequality with slack exactly the apothem.
inline std::array<HalfSpace, 6> hex_half_spaces(const HexPose& pose) {
  std::array<HalfSpace, 6> h;
  for (int j = 0; j < 6; ++j) {
    const double u = pose.theta + j * kHexSector;
    const double a = std::sin(u);
    const double b = std::cos(u);
    h[j] = {a, b, a * pose.center.x + b * pose.center.y - kHexApothem};
  }
  return h;
}

// Outer hexagon of side R centered at the origin, apothem R * sqrt(3)/2,
// written with the same inward-normal orientation as hex_half_spaces.
inline std::array<HalfSpace, 6> outer_hex_half_spaces(double R) {
  std::array<HalfSpace, 6> h;
  for (int k = 0; k < 6; ++k) {
    const double u = k * kHexSector;
    h[k] = {std::sin(u), std::cos(u), -R * kHexApothem};
  }
  return h;
}

inline std::array<Vec2, 6> outer_hex_vertices(double R) {
  std::array<Vec2, 6> v;
  for (int k = 0; k < 6; ++k) {
    const double u = (k + 0.5) * kHexSector;
    v[k] = {R * std::sin(u), R * std::cos(u)};
  }
  return v;
}

// The n honeycomb lattice sites closest to the origin, scaled so adjacent
// sites are `spacing` apart (spacing sqrt(3) gives edge-to-edge unit
// hexagons), recentered on their centroid. Deterministic ordering.
std::vector<Vec2> honeycomb_sites(int n, double spacing);

}  // namespace geopack

#include "geopack/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "geopack/geometry.hpp"

namespace geopack {
namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 60.0;

const char* const kHexFills[8] = {"#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
                                  "#c5b0d5", "#c49c94", "#f7b6d2", "#dbdb8d"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Mapper {
  double scale = 1.0;
  double off_x = 0.0;
  double off_y = 0.0;

  // Fits the scene box into the canvas, preserving aspect ratio, y up.
  static Mapper fit(double min_x, double min_y, double max_x, double max_y) {
    Mapper m;
    const double w = max_x - min_x;
    const double h = max_y - min_y;
    const double span = std::max({w, h, 1e-12});
    m.scale = (kCanvas - 2.0 * kMargin) / span;
    m.off_x = kMargin + (kCanvas - 2.0 * kMargin - w * m.scale) / 2.0 -
              min_x * m.scale;
    m.off_y = kMargin + (kCanvas - 2.0 * kMargin - h * m.scale) / 2.0 -
              min_y * m.scale;
    return m;
  }
  double x(double v) const { return v * scale + off_x; }
  double y(double v) const { return kCanvas - (v * scale + off_y); }
  double len(double v) const { return v * scale; }
};

void line(std::string& svg, const Mapper& m, Vec2 a, Vec2 b,
          const char* color, double width) {
  svg += "<line x1=\"" + fmt(m.x(a.x)) + "\" y1=\"" + fmt(m.y(a.y)) +
         "\" x2=\"" + fmt(m.x(b.x)) + "\" y2=\"" + fmt(m.y(b.y)) +
         "\" stroke=\"" + color + "\" stroke-width=\"" + fmt(width) +
         "\"/>\n";
}

void polygon(std::string& svg, const Mapper& m,
             const std::vector<Vec2>& pts, const char* fill,
             const char* stroke, double width) {
  svg += "<polygon points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) svg += " ";
    svg += fmt(m.x(pts[i].x)) + "," + fmt(m.y(pts[i].y));
  }
  svg += "\" fill=\"";
  svg += fill;
  svg += "\" stroke=\"";
  svg += stroke;
  svg += "\" stroke-width=\"" + fmt(width) + "\"/>\n";
}

std::string svg_open() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" "
         "height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
         "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
}

std::string render_minmax(const PointConfig& pc) {
  if (pc.d > 2)
    throw std::invalid_argument("render: minmax with d > 2 is not drawable");
  const int n = pc.n;
  auto pt = [&](int i) -> Vec2 {
    return {pc.at(i, 0), pc.d > 1 ? pc.at(i, 1) : 0.0};
  };

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  for (int i = 0; i < n; ++i) {
    const Vec2 p = pt(i);
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const Mapper m = Mapper::fit(min_x, min_y, max_x, max_y);

  const ExtremePairs ep = minmax_extreme_pairs(pc);
  std::vector<char> is_max(static_cast<size_t>(n) * n, 0);
  for (const auto& [i, j] : ep.max_pairs) is_max[i * n + j] = 1;

  std::string svg = svg_open();
  for (const auto& [i, j] : ep.min_pairs)
    if (!is_max[i * n + j]) line(svg, m, pt(i), pt(j), "#1f77b4", 3.0);
  for (const auto& [i, j] : ep.max_pairs)
    line(svg, m, pt(i), pt(j), "#d62728", 3.0);
  for (int i = 0; i < n; ++i) {
    const Vec2 p = pt(i);
    svg += "<circle cx=\"" + fmt(m.x(p.x)) + "\" cy=\"" + fmt(m.y(p.y)) +
           "\" r=\"6\" fill=\"#000000\"/>\n";
  }
  return svg + "</svg>\n";
}

std::string render_circles(const CircleConfig& cc) {
  const double w = cc.alpha;
  const double h = 2.0 - cc.alpha;
  double min_x = 0.0, min_y = 0.0, max_x = w, max_y = h;
  for (int i = 0; i < cc.n; ++i) {
    min_x = std::min(min_x, cc.centers[i].x - cc.radii[i]);
    max_x = std::max(max_x, cc.centers[i].x + cc.radii[i]);
    min_y = std::min(min_y, cc.centers[i].y - cc.radii[i]);
    max_y = std::max(max_y, cc.centers[i].y + cc.radii[i]);
  }
  const Mapper m = Mapper::fit(min_x, min_y, max_x, max_y);

  std::string svg = svg_open();
  svg += "<rect x=\"" + fmt(m.x(0.0)) + "\" y=\"" + fmt(m.y(h)) +
         "\" width=\"" + fmt(m.len(w)) + "\" height=\"" + fmt(m.len(h)) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  for (int i = 0; i < cc.n; ++i) {
    svg += "<circle cx=\"" + fmt(m.x(cc.centers[i].x)) + "\" cy=\"" +
           fmt(m.y(cc.centers[i].y)) + "\" r=\"" +
           fmt(m.len(std::max(cc.radii[i], 0.0))) +
           "\" fill=\"#aec7e8\" fill-opacity=\"0.6\" stroke=\"#1f77b4\" "
           "stroke-width=\"2\"/>\n";
  }
  return svg + "</svg>\n";
}

std::string render_hexagons(const HexConfig& hc) {
  const auto outer = outer_hex_vertices(hc.R);
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  for (const auto& v : outer) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  std::vector<std::array<Vec2, 6>> inner;
  for (int i = 0; i < hc.n; ++i) {
    inner.push_back(hex_vertices({hc.centers[i], hc.thetas[i]}));
    for (const auto& v : inner.back()) {
      min_x = std::min(min_x, v.x);
      max_x = std::max(max_x, v.x);
      min_y = std::min(min_y, v.y);
      max_y = std::max(max_y, v.y);
    }
  }
  const Mapper m = Mapper::fit(min_x, min_y, max_x, max_y);

  std::string svg = svg_open();
  polygon(svg, m, {outer.begin(), outer.end()}, "none", "#000000", 3.0);
  for (int i = 0; i < hc.n; ++i)
    polygon(svg, m, {inner[i].begin(), inner[i].end()}, kHexFills[i % 8],
            "#333333", 1.5);
  return svg + "</svg>\n";
}

}  // namespace

ExtremePairs minmax_extreme_pairs(const PointConfig& config, double band) {
  ExtremePairs ep;
  const int n = config.n;
  ep.min_dist = std::numeric_limits<double>::infinity();
  ep.max_dist = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int k = 0; k < config.d; ++k) {
        const double diff = config.at(i, k) - config.at(j, k);
        d2 += diff * diff;
      }
      const double dist = std::sqrt(d2);
      ep.min_dist = std::min(ep.min_dist, dist);
      ep.max_dist = std::max(ep.max_dist, dist);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (int k = 0; k < config.d; ++k) {
        const double diff = config.at(i, k) - config.at(j, k);
        d2 += diff * diff;
      }
      const double dist = std::sqrt(d2);
      if (dist <= ep.min_dist + band) ep.min_pairs.push_back({i, j});
      if (dist >= ep.max_dist - band) ep.max_pairs.push_back({i, j});
    }
  return ep;
}

std::string render_svg(const ModelSpec& spec, const AnyConfig& config) {
  switch (spec.family) {
    case Family::minmax:
      return render_minmax(std::get<PointConfig>(config));
    case Family::circles:
      return render_circles(std::get<CircleConfig>(config));
    case Family::hexagons:
      return render_hexagons(std::get<HexConfig>(config));
  }
  throw std::logic_error("render: unknown family");
}

}  // namespace geopack

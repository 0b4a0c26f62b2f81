#include "svg.hpp"

#include "lipvec/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace lipvec::cli {

namespace {

constexpr double kSize = 400;
constexpr double kRadius = 180;
constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

Rat cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<Vec> convex_hull_2d(std::vector<Vec> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Vec> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::string render_svg(const std::vector<PlotLayer>& layers, const std::string& title) {
  Rat extent(0);
  for (const auto& layer : layers) {
    if (layer.set.dimension() != 2) {
      throw DimensionMismatch("plotting needs dimension 2, layer " + layer.label + " has dimension " +
                              std::to_string(layer.set.dimension()));
    }
    for (const auto& piece : layer.set.pieces()) {
      for (const auto& g : piece.generators()) extent = std::max({extent, abs(g[0]), abs(g[1])});
    }
  }
  if (extent == 0) extent = Rat(1);
  auto sx = [&](const Rat& x) { return fmt(kSize / 2 + kRadius * Rat(x / extent).convert_to<double>()); };
  auto sy = [&](const Rat& y) { return fmt(kSize / 2 - kRadius * Rat(y / extent).convert_to<double>()); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "  <title>" << escape(title) << "</title>\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <line x1=\"0\" y1=\"" << kSize / 2 << "\" x2=\"" << kSize << "\" y2=\"" << kSize / 2
      << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n"
      << "  <line x1=\"" << kSize / 2 << "\" y1=\"0\" x2=\"" << kSize / 2 << "\" y2=\"" << kSize
      << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const char* color = kPalette[i % kPalette.size()];
    svg << "  <g id=\"layer" << i << "\" stroke=\"" << color << "\" fill=\"" << color << "\">\n"
        << "    <title>" << escape(layers[i].label) << "</title>\n";
    for (const auto& piece : layers[i].set.pieces()) {
      const auto hull = convex_hull_2d(piece.signed_generators());
      if (hull.size() == 1) {
        svg << "    <circle cx=\"" << sx(hull[0][0]) << "\" cy=\"" << sy(hull[0][1]) << "\" r=\"2\"/>\n";
      } else if (hull.size() == 2) {
        svg << "    <line x1=\"" << sx(hull[0][0]) << "\" y1=\"" << sy(hull[0][1]) << "\" x2=\"" << sx(hull[1][0])
            << "\" y2=\"" << sy(hull[1][1]) << "\" stroke-width=\"2\"/>\n";
      } else {
        svg << "    <polygon fill-opacity=\"0.15\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < hull.size(); ++k) {
          svg << (k ? " " : "") << sx(hull[k][0]) << ',' << sy(hull[k][1]);
        }
        svg << "\"/>\n";
      }
    }
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lipvec::cli

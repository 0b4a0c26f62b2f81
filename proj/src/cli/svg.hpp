#pragma once

#include "lipvec/sets.hpp"

#include <string>
#include <vector>

namespace lipvec::cli {

struct PlotLayer {
  std::string label;
  CircledSet set;
};

/// Convex hull of 2D points, counter-clockwise, exact. Collinear and
/// repeated points are dropped; one or two points come back for degenerate
/// inputs.
std::vector<Vec> convex_hull_2d(std::vector<Vec> points);

/// SVG 1.1 document with one polygon per piece of every layer, drawn in
/// layer order. Requires dimension 2.
std::string render_svg(const std::vector<PlotLayer>& layers, const std::string& title);

}  // namespace lipvec::cli

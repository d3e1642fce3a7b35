#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace slemma {

struct SvgSeries {
  std::vector<Eigen::Vector2d> points;
  /// Per-point class used to pick a fill colour; empty means class 0.
  std::vector<int> labels;
  /// Join the points into a polyline instead of drawing dots.
  bool polyline{false};
};

/// Self-contained SVG with a fixed 600x600 viewBox, axes through the origin
/// and the data scaled to fit symmetrically.
std::string RenderSvg(const std::vector<SvgSeries>& series, const std::string& title);

}  // namespace slemma

#include "slemma/svg_plot.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace slemma {
namespace {

constexpr double kSize = 600.0;
constexpr double kPad = 30.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string RenderSvg(const std::vector<SvgSeries>& series, const std::string& title) {
  double extent = 0.0;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (p.allFinite()) extent = std::max(extent, p.cwiseAbs().maxCoeff());
    }
  }
  if (!(extent > 0.0)) extent = 1.0;
  const double half = kSize / 2.0;
  const double scale = (half - kPad) / extent;
  auto px = [&](double x) { return half + scale * x; };
  auto py = [&](double y) { return half - scale * y; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {0} {0}\" width=\"{0}\" "
      "height=\"{0}\">\n",
      static_cast<int>(kSize));
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
                     static_cast<int>(kSize));
  out += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#999\" stroke-width=\"1\"/>\n",
      kPad, half, kSize - kPad);
  out += fmt::format(
      "<line x1=\"{1}\" y1=\"{0}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#999\" stroke-width=\"1\"/>\n",
      kPad, half, kSize - kPad);
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\">{}</text>\n", kPad, 20,
                     Escape(title));
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">scale {:.6g}</text>\n", kPad,
                     kSize - 8, extent);
  for (const auto& s : series) {
    if (s.polyline) {
      std::string pts;
      for (const auto& p : s.points) {
        if (!p.allFinite()) continue;
        pts += fmt::format("{:.2f},{:.2f} ", px(p.x()), py(p.y()));
      }
      if (!pts.empty()) pts.pop_back();
      out += fmt::format(
          "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\"/>\n", pts,
          kPalette[0]);
      continue;
    }
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& p = s.points[i];
      if (!p.allFinite()) continue;
      const int label = i < s.labels.size() ? s.labels[i] : 0;
      const char* colour = kPalette[((label % 8) + 8) % 8];
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.5\" fill=\"{}\"/>\n",
                         px(p.x()), py(p.y()), colour);
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace slemma

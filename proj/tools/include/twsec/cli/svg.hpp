#pragma once

#include <string>
#include <vector>

namespace twsec::cli {

struct SvgPoint {
  double x, y;
};

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  bool dashed = false;
  std::vector<SvgPoint> points;
};

struct SvgChart {
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<SvgSeries> series;
};

// Minimal line chart: axes, ticks, polylines, legend.
std::string render_svg(const SvgChart& chart);

}  // namespace twsec::cli

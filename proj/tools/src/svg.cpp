#include "twsec/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace twsec::cli {

namespace {

constexpr double kW = 720, kH = 480;
constexpr double kL = 70, kR = 20, kT = 20, kB = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const SvgChart& chart) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : chart.series)
    for (const auto& p : s.points) {
      const double x = chart.log_x ? std::log10(p.x) : p.x;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  if (xmin >= xmax) { xmin -= 1; xmax += 1; }
  if (ymin >= ymax) { ymin -= 1; ymax += 1; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) {
    const double v = chart.log_x ? std::log10(x) : x;
    return kL + (v - xmin) / (xmax - xmin) * (kW - kL - kR);
  };
  auto py = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  os << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\""
     << kH - kB << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB
     << "\" stroke=\"black\"/>\n";
  // ticks (5 per axis)
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double gx = kL + (kW - kL - kR) * i / 5.0;
    const double label = chart.log_x ? std::pow(10.0, fx) : fx;
    os << "<line x1=\"" << gx << "\" y1=\"" << kH - kB << "\" x2=\"" << gx << "\" y2=\""
       << kH - kB + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << gx << "\" y=\"" << kH - kB + 20
       << "\" font-size=\"11\" text-anchor=\"middle\">" << num(label) << "</text>\n";
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    const double gy = kH - kB - (kH - kT - kB) * i / 5.0;
    os << "<line x1=\"" << kL - 5 << "\" y1=\"" << gy << "\" x2=\"" << kL << "\" y2=\"" << gy
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kL - 8 << "\" y=\"" << gy + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << num(fy) << "</text>\n";
  }
  os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 10
     << "\" font-size=\"13\" text-anchor=\"middle\">" << chart.x_label << "</text>\n";
  os << "<text x=\"15\" y=\"" << (kT + kH - kB) / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
     << (kT + kH - kB) / 2 << ")\">" << chart.y_label << "</text>\n";

  // series
  double ly = kT + 12;
  for (const auto& s : chart.series) {
    if (s.points.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (const auto& p : s.points) os << num(px(p.x)) << ',' << num(py(p.y)) << ' ';
    os << "\"/>\n";
    for (const auto& p : s.points)
      os << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
         << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
    os << "<line x1=\"" << kW - kR - 150 << "\" y1=\"" << ly << "\" x2=\"" << kW - kR - 125
       << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    os << "<text x=\"" << kW - kR - 120 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
       << s.label << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace twsec::cli

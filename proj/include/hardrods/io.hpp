#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "hardrods/grid.hpp"

namespace hardrods {

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV with LF line endings and a two-column header.
inline void write_grid_csv(std::ostream& os, const GridFunction& grid,
                           const std::string& value_name) {
  os << "x," << value_name << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << format_float(grid.x(i)) << ',' << format_float(grid.values[i]) << "\n";
  }
}

struct SvgSeries {
  std::string label;
  std::string color;
  const GridFunction* grid = nullptr;
};

// Static overlay plot: one polyline per series, linear axes, legend.
// Values above y_max are clipped so the narrow high peaks of g at large
// |p| do not flatten the oscillatory structure.
inline void write_svg_overlay(std::ostream& os, const std::vector<SvgSeries>& series,
                              const std::string& title, double y_max) {
  const int W = 960, H = 600;
  const int ml = 60, mr = 20, mt = 40, mb = 45;
  const double pw = W - ml - mr, ph = H - mt - mb;
  double x_max = 1.0;
  for (const auto& s : series) {
    if (s.grid && s.grid->size() > 1) x_max = std::max(x_max, s.grid->x(s.grid->size() - 1));
  }
  auto X = [&](double x) { return ml + x / x_max * pw; };
  auto Y = [&](double y) { return mt + (1.0 - std::min(y, y_max) / y_max) * ph; };

  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
     << "' viewBox='0 0 " << W << ' ' << H << "'>\n";
  os << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";
  os << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>"
     << title << "</text>\n";
  // axes
  os << "<line x1='" << ml << "' y1='" << mt + ph << "' x2='" << ml + pw << "' y2='"
     << mt + ph << "' stroke='black'/>\n";
  os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << mt + ph
     << "' stroke='black'/>\n";
  for (int t = 0; t <= static_cast<int>(x_max); ++t) {
    os << "<line x1='" << X(t) << "' y1='" << mt + ph << "' x2='" << X(t) << "' y2='"
       << mt + ph + 4 << "' stroke='black'/>\n";
    os << "<text x='" << X(t) << "' y='" << mt + ph + 18
       << "' text-anchor='middle' font-size='11'>" << t << "</text>\n";
  }
  for (double t = 0.0; t <= y_max + 1e-9; t += y_max / 4.0) {
    os << "<line x1='" << ml - 4 << "' y1='" << Y(t) << "' x2='" << ml << "' y2='"
       << Y(t) << "' stroke='black'/>\n";
    char lab[16];
    std::snprintf(lab, sizeof lab, "%.2g", t);
    os << "<text x='" << ml - 8 << "' y='" << Y(t) + 4
       << "' text-anchor='end' font-size='11'>" << lab << "</text>\n";
  }
  os << "<text x='" << ml + pw / 2 << "' y='" << H - 8
     << "' text-anchor='middle' font-size='13'>x</text>\n";
  os << "<text x='16' y='" << mt + ph / 2
     << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
     << mt + ph / 2 << ")'>g(x)</text>\n";
  // guide at g = 1
  os << "<line x1='" << ml << "' y1='" << Y(1.0) << "' x2='" << ml + pw << "' y2='"
     << Y(1.0) << "' stroke='#bbbbbb' stroke-dasharray='4 4'/>\n";

  int li = 0;
  for (const auto& s : series) {
    if (!s.grid) continue;
    os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.2' points='";
    for (std::size_t i = 0; i < s.grid->size(); ++i) {
      os << X(s.grid->x(i)) << ',' << Y(std::max(0.0, s.grid->values[i])) << ' ';
    }
    os << "'/>\n";
    os << "<line x1='" << ml + pw - 170 << "' y1='" << mt + 14 + 16 * li << "' x2='"
       << ml + pw - 140 << "' y2='" << mt + 14 + 16 * li << "' stroke='" << s.color
       << "' stroke-width='2'/>\n";
    os << "<text x='" << ml + pw - 132 << "' y='" << mt + 18 + 16 * li
       << "' font-size='12'>" << s.label << "</text>\n";
    ++li;
  }
  os << "</svg>\n";
}

}  // namespace hardrods

#include "lnfade/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "lnfade/errors.hpp"

namespace lnfade {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void write_svg_plot(std::ostream& os, const CsvTable& table, const std::string& x_col,
                    const std::string& y_col) {
  table.column(x_col);  // throws on an unknown column before any output
  table.column(y_col);
  std::vector<std::size_t> key_cols;
  for (const char* name : {"scheme", "policy", "a1"}) {
    if (table.has_column(name)) key_cols.push_back(table.column(name));
  }

  // Series keyed by label, in order of first appearance.
  std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
  std::map<std::string, std::size_t> index;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::string label;
    for (std::size_t k : key_cols) {
      if (!label.empty()) label += ' ';
      label += table.header[k] + "=" + table.rows[r][k];
    }
    if (label.empty()) label = y_col;
    auto [it, inserted] = index.emplace(label, series.size());
    if (inserted) series.push_back({label, {}});
    const double x = table.number(r, x_col);
    const double y = table.number(r, y_col);
    series[it->second].second.emplace_back(x, y);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (series.empty()) throw DomainError("plot: table has no rows");
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - ymin) / (ymax - ymin) * ph; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    os << "<text x=\"" << fmt(sx(fx)) << "\" y=\"" << fmt(kTop + ph + 15)
       << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    os << "<text x=\"" << fmt(kLeft - 5) << "\" y=\"" << fmt(sy(fy) + 4)
       << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  os << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 10)
     << "\" text-anchor=\"middle\">" << escape(x_col) << "</text>\n";
  os << "<text x=\"15\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
     << fmt(kTop + ph / 2) << ")\">" << escape(y_col) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    auto pts = series[s].second;
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const char* color = kPalette[s % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << fmt(sx(pts[i].first)) << ',' << fmt(sy(pts[i].second));
    }
    os << "\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(s + 1);
    os << "<text x=\"" << fmt(kLeft + pw + 8) << "\" y=\"" << fmt(ly) << "\" fill=\"" << color
       << "\">" << escape(series[s].first) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace lnfade

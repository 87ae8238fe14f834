#pragma once
// Hand-written SVG log-log scatter plots (no plotting dependency).

#include <optional>
#include <string>
#include <vector>

namespace emass {

struct SvgSeries {
  std::string label;
  std::string color = "#1f6fb2";
  std::vector<double> x, y;
};

struct SvgFitLine {
  double slope = 0.0;
  double intercept = 0.0;  // log10(y) = intercept + slope * log10(x)
  std::string color = "#c03020";
};

// log-log scatter; returns the SVG document (deterministic bytes)
std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<SvgSeries>& series,
                       const std::optional<SvgFitLine>& fit);

void write_svg(const std::string& path, const std::string& document);

}  // namespace emass

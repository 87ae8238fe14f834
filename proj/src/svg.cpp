#include "eigenmass/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace emass {

namespace {

constexpr double kW = 640.0, kH = 480.0;
constexpr double kL = 70.0, kR = 20.0, kT = 40.0, kB = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<SvgSeries>& series,
                       const std::optional<SvgFitLine>& fit) {
  double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
  for (const SvgSeries& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      lx0 = std::min(lx0, std::log10(s.x[i]));
      lx1 = std::max(lx1, std::log10(s.x[i]));
      ly0 = std::min(ly0, std::log10(s.y[i]));
      ly1 = std::max(ly1, std::log10(s.y[i]));
    }
  if (lx0 > lx1) {
    lx0 = ly0 = 0.0;
    lx1 = ly1 = 1.0;
  }
  if (lx1 - lx0 < 1e-9) lx1 = lx0 + 1.0;
  if (ly1 - ly0 < 1e-9) ly1 = ly0 + 1.0;
  const double padx = 0.05 * (lx1 - lx0), pady = 0.05 * (ly1 - ly0);
  lx0 -= padx;
  lx1 += padx;
  ly0 -= pady;
  ly1 += pady;

  auto X = [&](double lx) { return kL + (lx - lx0) / (lx1 - lx0) * (kW - kL - kR); };
  auto Y = [&](double ly) { return kH - kB - (ly - ly0) / (ly1 - ly0) * (kH - kT - kB); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";
  // frame
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << (kW - kL - kR) << "\" height=\""
     << (kH - kT - kB) << "\" fill=\"none\" stroke=\"black\"/>\n";
  // decade ticks
  for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
    const double px = X(e);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << (kH - kB) << "\" x2=\"" << num(px)
       << "\" y2=\"" << (kH - kB + 6) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << (kH - kB + 20)
       << "\" text-anchor=\"middle\" font-size=\"11\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
    const double py = Y(e);
    os << "<line x1=\"" << (kL - 6) << "\" y1=\"" << num(py) << "\" x2=\"" << kL << "\" y2=\""
       << num(py) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (kL - 10) << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">1e" << e << "</text>\n";
  }
  os << "<text x=\"" << kW / 2 << "\" y=\"" << (kH - 12)
     << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
  os << "<text x=\"18\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << kH / 2 << ")\">" << ylabel << "</text>\n";

  if (fit) {
    const double yA = fit->intercept + fit->slope * lx0;
    const double yB = fit->intercept + fit->slope * lx1;
    os << "<line x1=\"" << num(X(lx0)) << "\" y1=\"" << num(Y(yA)) << "\" x2=\"" << num(X(lx1))
       << "\" y2=\"" << num(Y(yB)) << "\" stroke=\"" << fit->color
       << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
  }

  int legend_row = 0;
  for (const SvgSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      os << "<circle cx=\"" << num(X(std::log10(s.x[i]))) << "\" cy=\""
         << num(Y(std::log10(s.y[i]))) << "\" r=\"2.6\" fill=\"" << s.color << "\"/>\n";
    }
    if (!s.label.empty()) {
      const double ly = kT + 16 + 16 * legend_row++;
      os << "<circle cx=\"" << (kW - kR - 150) << "\" cy=\"" << num(ly - 4) << "\" r=\"3\" fill=\""
         << s.color << "\"/>\n";
      os << "<text x=\"" << (kW - kR - 142) << "\" y=\"" << num(ly)
         << "\" font-size=\"11\">" << s.label << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const std::string& path, const std::string& document) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_svg: cannot open " + path);
  os << document;
  if (!os) throw std::runtime_error("write_svg: write failed " + path);
}

}  // namespace emass

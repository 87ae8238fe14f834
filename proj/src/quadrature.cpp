#include "eigenmass/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace emass {

namespace {

GaussRule make_gauss(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, Newton on P_n
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

std::map<int, GaussRule> g_rules;
std::mutex g_rules_mutex;

}  // namespace

const GaussRule& gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
  std::lock_guard<std::mutex> lock(g_rules_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) it = g_rules.emplace(n, make_gauss(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& r = gauss_rule(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.w[i] * f(mid + half * r.x[i]);
  return half * s;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  return f;
}

double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (err[i] <= 0.0) continue;  // converged to roundoff; drop the sample
    lx.push_back(std::log(h[i]));
    ly.push_back(std::log(err[i]));
  }
  if (lx.size() < 2) return std::numeric_limits<double>::infinity();
  return fit_line(lx, ly).slope;
}

}  // namespace emass

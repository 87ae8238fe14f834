#include "eigenmass/cutoffs.hpp"

#include <cmath>

#include "eigenmass/quadrature.hpp"

namespace emass {

namespace {

double molly(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double molly_d1(double t) { return t > 0.0 ? molly(t) / (t * t) : 0.0; }
double molly_d2(double t) { return t > 0.0 ? molly(t) * (1.0 - 2.0 * t) / (t * t * t * t) : 0.0; }

// smoothstep 0 -> 1 on [0,1]; S(t) + S(1-t) = 1
double step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double f = molly(t), g = molly(1.0 - t);
  return f / (f + g);
}

double step_d1(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double f = molly(t), g = molly(1.0 - t);
  const double fp = molly_d1(t), gp = molly_d1(1.0 - t);
  const double d = f + g;
  return (fp * g + f * gp) / (d * d);
}

double step_d2(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double f = molly(t), g = molly(1.0 - t);
  const double fp = molly_d1(t), gp = molly_d1(1.0 - t);
  const double fpp = molly_d2(t), gpp = molly_d2(1.0 - t);
  const double d = f + g;
  const double num = fp * g + f * gp;
  const double num_d = fpp * g - f * gpp;
  const double d_d = fp - gp;
  return num_d / (d * d) - 2.0 * num * d_d / (d * d * d);
}

}  // namespace

double CutoffFamily::gamma(double s) const {
  const double a = std::abs(s);
  if (a <= 1.0) return 0.5;
  if (a >= 3.0) return 0.0;
  return 0.5 * (1.0 - step(0.5 * (a - 1.0)));
}

double CutoffFamily::gamma_prime(double s) const {
  const double a = std::abs(s);
  if (a <= 1.0 || a >= 3.0) return 0.0;
  const double d = -0.25 * step_d1(0.5 * (a - 1.0));
  return s > 0.0 ? d : -d;
}

double CutoffFamily::gamma_second(double s) const {
  const double a = std::abs(s);
  if (a <= 1.0 || a >= 3.0) return 0.0;
  return -0.125 * step_d2(0.5 * (a - 1.0));
}

double CutoffFamily::integral_panel(double a, double b) const {
  const GaussRule& r = gauss_rule(6);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * gamma(mid + half * r.x[i]);
  return half * s;
}

CutoffFamily::CutoffFamily() {
  table_[0] = 0.0;
  const double hstep = 2.0 / kTable;
  for (int i = 1; i <= kTable; ++i)
    table_[i] = table_[i - 1] + integral_panel(1.0 + (i - 1) * hstep, 1.0 + i * hstep);
}

double CutoffFamily::chi(double s) const {
  const double a = std::abs(s);
  double v;
  if (a <= 1.0) {
    v = 0.5 * a;
  } else if (a >= 3.0) {
    v = 1.0;
  } else {
    const double hstep = 2.0 / kTable;
    const int i = static_cast<int>((a - 1.0) / hstep);
    v = 0.5 + table_[i] + integral_panel(1.0 + i * hstep, a);
  }
  return s >= 0.0 ? v : -v;
}

const CutoffFamily& build_cutoffs() {
  static const CutoffFamily family;
  return family;
}

}  // namespace emass

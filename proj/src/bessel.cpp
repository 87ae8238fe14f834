#include "eigenmass/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace emass {

namespace {

constexpr int kMaxOrder = 200;
constexpr double kMaxArg = 1e4;

void check_range(int m, double x) {
  if (m < 0 || m > kMaxOrder)
    throw std::invalid_argument("bessel_j: order out of range [0,200]: " + std::to_string(m));
  if (!(x >= 0.0) || x > kMaxArg)
    throw std::invalid_argument("bessel_j: argument out of range [0,1e4]");
}

// ascending series; safe from cancellation for x <= ~12
double series_j(int m, double x) {
  const double q = 0.25 * x * x;
  // first term (x/2)^m / m! in log space for large m
  double term;
  if (m == 0) {
    term = 1.0;
  } else {
    const double lt = m * std::log(0.5 * x) - std::lgamma(m + 1.0);
    if (lt < -745.0) return 0.0;  // below double range
    term = std::exp(lt);
  }
  double sum = term;
  for (int j = 1; j < 200; ++j) {
    term *= -q / (static_cast<double>(j) * (m + j));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Miller backward recurrence, normalized by J_0 + 2*sum J_{2k} = 1
double miller_j(int m, double x) {
  const int top = std::max(m, static_cast<int>(std::ceil(x)));
  const int start = top + 24 + 2 * static_cast<int>(std::sqrt(static_cast<double>(top) + 1.0));
  double pp = 0.0;        // p_{k+1}
  double pc = 1e-30;      // p_k
  double norm = 0.0;      // J_0 + 2*sum_{even k>0} contributions
  double result = 0.0;
  bool have_result = false;
  for (int k = start; k >= 0; --k) {
    const double pm = (2.0 * (k + 1)) / x * pc - pp;  // p_{k}      (recurrence at order k+1)
    pp = pc;
    pc = pm;
    if (k == m) {
      result = pc;
      have_result = true;
    }
    if (k > 0 && k % 2 == 0)
      norm += 2.0 * pc;
    else if (k == 0)
      norm += pc;
    if (std::abs(pc) > 1e250) {
      pc *= 1e-250;
      pp *= 1e-250;
      norm *= 1e-250;
      if (have_result) result *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int m, double x) {
  check_range(m, x);
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x <= 12.0) return series_j(m, x);
  return miller_j(m, x);
}

double bessel_j_prime(int m, double x) {
  check_range(m, x);
  if (m == 0) return -bessel_j(1, x);
  if (x == 0.0) return m == 1 ? 0.5 : 0.0;
  return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
}

double bessel_zero(int m, int k, BesselZeroKind kind) {
  if (m < 0 || m > kMaxOrder || k < 1 || k > kMaxOrder)
    throw std::invalid_argument("bessel_zero: order/index out of range");
  auto f = [&](double x) {
    return kind == BesselZeroKind::OfJ ? bessel_j(m, x) : bessel_j_prime(m, x);
  };

  // All positive zeros of J_m and J_m' exceed m; consecutive zeros are
  // separated by more than 1, so a unit scan cannot skip a bracket.
  double x0 = (m > 0) ? static_cast<double>(m) : 0.4;
  const double step = 1.0;
  const double x_hi = m + 1.86 * std::cbrt(static_cast<double>(m) + 1.0) +
                      M_PI * (k + 0.5 * m + 2.0) + 25.0;
  double f0 = f(x0);
  int found = 0;
  double lo = 0.0, hi = 0.0;
  while (x0 < x_hi) {
    const double x1 = x0 + step;
    const double f1 = f(x1);
    if ((f0 < 0.0) != (f1 < 0.0) || f1 == 0.0) {
      ++found;
      if (found == k) {
        lo = x0;
        hi = x1;
        break;
      }
    }
    x0 = x1;
    f0 = f1;
  }
  if (found < k)
    throw std::runtime_error("bessel_zero: bracketing failed for m=" + std::to_string(m) +
                             " k=" + std::to_string(k) + " scanned up to x=" +
                             std::to_string(x_hi));
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace emass

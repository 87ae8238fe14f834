#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eigenmass/quadrature.hpp"

using namespace emass;

TEST_CASE("gauss rules integrate polynomials exactly") {
  // n-point Gauss is exact through degree 2n-1
  for (int n : {2, 4, 8}) {
    const int deg = 2 * n - 1;
    const double got = integrate([&](double x) { return std::pow(x, deg); }, 0.0, 1.0, n);
    CHECK(got == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
  }
}

TEST_CASE("gauss weights sum to the interval length") {
  for (int n : {1, 3, 16, 64}) {
    const GaussRule& r = gauss_rule(n);
    double s = 0.0;
    for (double w : r.w) s += w;
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("smooth integrand to high accuracy") {
  const double got = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 24);
  CHECK(got == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("line fit recovers slope and intercept") {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(0.1 * i);
    y.push_back(3.5 - 2.0 * 0.1 * i);
  }
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(f.rms_residual < 1e-12);
}

TEST_CASE("order fit on synthetic h^2 data") {
  std::vector<double> h = {0.1, 0.05, 0.025}, e;
  for (double hh : h) e.push_back(7.0 * hh * hh);
  CHECK(fit_order(h, e) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("rng is deterministic") {
  Rng a(11), b(11);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Rng c(12);
  double mean = 0.0;
  for (int i = 0; i < 1000; ++i) mean += c.uniform();
  mean /= 1000.0;
  CHECK(mean > 0.4);
  CHECK(mean < 0.6);
}

#include "eigenmass/fd_field.hpp"

#include <stdexcept>

#include "eigenmass/kernels.hpp"

namespace emass {

SquareField SquareField::zeros(int resolution, int px_, int py_) {
  SquareField f;
  f.n = resolution + 1;
  f.dx = 1.0 / resolution;
  f.px = px_;
  f.py = py_;
  f.v.assign(static_cast<std::size_t>(f.n) * f.n, 0.0);
  return f;
}

double SquareField::at(int i, int j) const {
  double sign = 1.0;
  if (i < 0) {
    i = -i;
    sign *= px;
  } else if (i >= n) {
    i = 2 * (n - 1) - i;
    sign *= px;
  }
  if (j < 0) {
    j = -j;
    sign *= py;
  } else if (j >= n) {
    j = 2 * (n - 1) - j;
    sign *= py;
  }
  return sign * get(i, j);
}

SquareField deriv_x(const SquareField& f) {
  SquareField g = f;
  g.px = (f.px == 0) ? 0 : -f.px;
  const double c = 1.0 / (12.0 * f.dx);
  for (int j = 0; j < f.n; ++j)
    for (int i = 0; i < f.n; ++i)
      g.ref(i, j) =
          c * (f.at(i - 2, j) - 8.0 * f.at(i - 1, j) + 8.0 * f.at(i + 1, j) - f.at(i + 2, j));
  return g;
}

SquareField deriv_y(const SquareField& f) {
  SquareField g = f;
  g.py = (f.py == 0) ? 0 : -f.py;
  const double c = 1.0 / (12.0 * f.dx);
  for (int j = 0; j < f.n; ++j)
    for (int i = 0; i < f.n; ++i)
      g.ref(i, j) =
          c * (f.at(i, j - 2) - 8.0 * f.at(i, j - 1) + 8.0 * f.at(i, j + 1) - f.at(i, j + 2));
  return g;
}

SquareField laplacian4(const SquareField& f) {
  SquareField g = f;
  const double c = 1.0 / (12.0 * f.dx * f.dx);
  for (int j = 0; j < f.n; ++j)
    for (int i = 0; i < f.n; ++i)
      g.ref(i, j) = c * (-f.at(i - 2, j) + 16.0 * f.at(i - 1, j) - 30.0 * f.get(i, j) +
                         16.0 * f.at(i + 1, j) - f.at(i + 2, j) - f.at(i, j - 2) +
                         16.0 * f.at(i, j - 1) - 30.0 * f.get(i, j) + 16.0 * f.at(i, j + 1) -
                         f.at(i, j + 2));
  return g;
}

SquareField multiply(const SquareField& a, const SquareField& b) {
  if (a.n != b.n) throw std::invalid_argument("field multiply: size mismatch");
  SquareField g = a;
  g.px = (a.px == 0 || b.px == 0) ? 0 : a.px * b.px;
  g.py = (a.py == 0 || b.py == 0) ? 0 : a.py * b.py;
  for (std::size_t k = 0; k < g.v.size(); ++k) g.v[k] = a.v[k] * b.v[k];
  return g;
}

void add_scaled(SquareField& y, double c, const SquareField& x) {
  if (y.n != x.n) throw std::invalid_argument("field add: size mismatch");
  kernels::axpy(c, x.v.data(), y.v.data(), y.v.size());
  if (y.px != x.px) y.px = 0;
  if (y.py != x.py) y.py = 0;
}

double inner(const SquareField& a, const SquareField& b) {
  if (a.n != b.n) throw std::invalid_argument("field inner: size mismatch");
  const int n = a.n;
  const double w = a.dx * a.dx;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double cy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    const double* ra = a.v.data() + static_cast<std::size_t>(j) * n;
    const double* rb = b.v.data() + static_cast<std::size_t>(j) * n;
    double row = kernels::dot(ra + 1, rb + 1, n - 2);
    row += 0.5 * (ra[0] * rb[0] + ra[n - 1] * rb[n - 1]);
    s += cy * row;
  }
  return s * w;
}

}  // namespace emass

#pragma once
// Fourth-order finite-difference calculus for scalar fields on the uniform
// unit-square tensor grid, with parity ghost extension across the edges
// (odd for Dirichlet-type fields, even for Neumann-type).  Used by the
// commutator checks, which pair discrete operators via trapezoid quadrature.

#include <vector>

namespace emass {

struct SquareField {
  int n = 0;       // nodes per side (resolution + 1)
  double dx = 0.0;
  int px = 1, py = 1;  // reflection parity per axis: +1 even, -1 odd, 0 none
  std::vector<double> v;

  static SquareField zeros(int resolution, int px, int py);

  double& ref(int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; }
  double get(int i, int j) const { return v[static_cast<std::size_t>(j) * n + i]; }

  // parity-reflected access; indices may lie up to 2 cells beyond the edges
  double at(int i, int j) const;
};

SquareField deriv_x(const SquareField& f);   // 4th-order centered
SquareField deriv_y(const SquareField& f);
SquareField laplacian4(const SquareField& f);

SquareField multiply(const SquareField& a, const SquareField& b);  // pointwise
void add_scaled(SquareField& y, double c, const SquareField& x);   // y += c x

// trapezoid inner product over the unit square
double inner(const SquareField& a, const SquareField& b);

}  // namespace emass

#pragma once
// Analytic eigenfunctions used as oracles: rectangle trig modes, disk
// Bessel modes, highest-weight spherical harmonics on S2 (Gaussian beams)
// and radial modes of the unit 3-ball, plus the collar reflection
// extension.  All modes are L2-normalized.

#include <memory>
#include <string>
#include <vector>

#include "eigenmass/geometry.hpp"

namespace emass {

enum class BoundaryCondition { Dirichlet, Neumann, None };

std::string to_string(BoundaryCondition bc);
BoundaryCondition bc_from_string(const std::string& s);

struct EigenMode {
  enum class Family { Rectangle, Disk, SphereHW, Ball3, Discrete };

  std::string id;
  Domain domain;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double lambda = 0.0;  // eigenvalue is lambda^2
  double h = 0.0;       // 1/lambda (infinity for the constant Neumann mode)

  Family family = Family::Rectangle;
  int p1 = 0, p2 = 0;      // (j,k) / (m,k) / (n,-) / (k,-)
  bool cos_parity = true;  // disk angular parity
  double norm_const = 1.0;

  // discrete payload (node values on `grid`, unit M-norm)
  std::shared_ptr<const Grid> grid;
  std::shared_ptr<const std::vector<double>> values;

  bool is_closed_form() const { return family != Family::Discrete; }
  // pointwise value; the S2 beam reports the real part of the complex mode
  double value(const Vec3& p) const;
  // |phi|^2; zonal for the complex S2 beam, value^2 for real modes
  double abs2(const Vec3& p) const;
};

// Dirichlet: 2 sin(j pi x) sin(k pi y), j,k >= 1.
// Neumann: normalized cos products, j,k >= 0 ((0,0) is the constant mode).
EigenMode rectangle_mode(int j, int k, BoundaryCondition bc);

// N J_m(alpha r) {cos,sin}(m theta); alpha the k-th zero of J_m (Dirichlet)
// or J_m' (Neumann). Normalized by radial quadrature.
EigenMode disk_mode(int m, int k, BoundaryCondition bc, bool cos_parity = true);

// Highest-weight spherical harmonic (x+iy)^n on S2, n <= 5000;
// h = 1/sqrt(n(n+1)).  abs2() is the zonal modulus N^2 (1-z^2)^n.
EigenMode sphere_highest_weight(int n);

// Radial Dirichlet mode N sin(k pi r)/(k pi r) of the unit 3-ball, k <= 50.
EigenMode ball3_mode(int k);

// d/dr of the ball3 radial profile at radius r (for sphere-surface terms)
double ball3_mode_radial_derivative(const EigenMode& mode, double r);

// node values of a mode on a grid (radial/azimuthal fast paths)
std::vector<double> sample_on_grid(const EigenMode& mode, const Grid& grid);

struct ExtendedMode {
  EigenMode base;
  int parity_sign = 1;  // +1 even (Neumann), -1 odd (Dirichlet)
  double collar = 0.0;
  // value on Omega and on the exterior collar (Fermi reflection)
  double value(const Vec3& p) const;
};

// Even (Neumann) / odd (Dirichlet) extension across the boundary collar.
ExtendedMode reflect_extend(const EigenMode& mode, double collar_width);

}  // namespace emass

#pragma once
// Small-ball mass M(x0,mu), scaling-exponent fits, sup norms, the local
// mass / sup-norm ratio, h-Sobolev norms and the boundary-layer cosine
// diagnostic.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eigenmass/closed_form.hpp"
#include "eigenmass/geometry.hpp"

namespace emass {

std::vector<double> geometric_grid(double lo, double hi, int count);

// A mode bound to a grid, with node values precomputed for fast sweeps.
class MassAnalyzer {
 public:
  MassAnalyzer(EigenMode mode, std::shared_ptr<const Grid> grid);

  const EigenMode& mode() const { return mode_; }
  const Grid& grid() const { return *grid_; }
  double l2_norm_sq() const;

  // quadrature of |phi|^2 over ball_region(grid, x0, mu)
  double ball_mass(const Vec3& x0, double mu, bool* under_resolved = nullptr) const;

  // raw windowed mass without cell clipping (sup scans); indices-only pass
  double ball_mass_fast(const Vec3& x0, double mu) const;

 private:
  EigenMode mode_;
  std::shared_ptr<const Grid> grid_;
  std::vector<double> abs_vals_;  // |phi| at nodes
};

// Dedicated fine quadrature of |phi|^2 over B(x0,mu) ∩ Ω for closed-form
// modes (polar reduction about x0 on the square, radial-by-angular on the
// disk, band reduction on S2, radial on the ball).
double ball_mass_fine(const EigenMode& mode, const Vec3& x0, double mu);

struct MassSample {
  double mu = 0.0;
  double mass = 0.0;
  bool under_resolved = false;
  bool in_fit = true;
};

struct MassProfile {
  std::string mode_id;
  Vec3 center;
  std::vector<MassSample> samples;
  double alpha = 0.0;         // fitted exponent of M ~ C mu^alpha
  double log_c = 0.0;
  double fit_residual = 0.0;  // rms residual of the log-log fit
};

// profile via the analyzer's grid quadrature
MassProfile mass_profile(const MassAnalyzer& an, const Vec3& x0,
                         const std::vector<double>& mu_grid);
// profile via closed-form fine quadrature
MassProfile mass_profile_fine(const EigenMode& mode, const Vec3& x0,
                              const std::vector<double>& mu_grid);

struct SweepRow {
  std::string mode_id;
  double lambda = 0.0;
  double k_mass_over_mu = 0.0;  // max over centers x mu of M/mu
};

std::vector<SweepRow> nonconcentration_sweep(const std::vector<MassAnalyzer>& modes,
                                             const std::vector<Vec3>& centers,
                                             const std::vector<double>& mu_grid);

struct SupNorm {
  double value = 0.0;
  Vec3 argmax;
};
SupNorm sup_norm(const EigenMode& mode, const Grid& grid);

struct Thm2Report {
  std::string mode_id;
  double lambda = 0.0, h = 0.0;
  double sup = 0.0;      // ||phi||_inf
  double s_h = 0.0;      // sup_x ||phi||_{L2(B(x,h))}
  double ratio = 0.0;    // sup / (h^{-n/2} s_h)
  Vec3 sup_point, mass_point;
};

// centers: every grid node (the grid must be finer than h/2)
Thm2Report thm2_ratio(const MassAnalyzer& an);

// squared h-Sobolev norm sum_{|beta|<=s} ||(hD)^beta phi||^2 on the square
double h_sobolev_norm(const EigenMode& mode, int order, int resolution = 256);

struct LayerReport {
  double layer_width = 0.0;        // pi h / 8
  double max_phi_layer = 0.0;      // max |phi| inside the layer
  double max_psi_inner = 0.0;      // max |cos(2 x_n/h) phi| on x_n = 0
  double max_psi_outer = 0.0;      // ... on x_n = pi h/8
  double ratio = 0.0;              // max_phi / (sqrt(2) max(b0, bL))
};

LayerReport boundary_layer_diagnostic(const EigenMode& mode);

}  // namespace emass

#pragma once
// Numerical verification of the proof machinery: the Rellich commutator
// decomposition at square edge midpoints (flat metric, so the metric error
// term vanishes identically) and the Green mean-value representation for
// zonal modes of the unit 3-ball.

#include "eigenmass/closed_form.hpp"
#include "eigenmass/cutoffs.hpp"
#include "eigenmass/geometry.hpp"

namespace emass {

struct CommutatorReport {
  std::string mode_id;
  Vec3 p0;
  double mu = 0.0, h = 0.0, lambda = 0.0;
  int resolution = 0;

  double t_rellich = 0.0;  // (i/h)<[P,A]phi,phi>, must vanish in the continuum
  double t_core = 0.0;     // psi-localized commutator term, ~ 2 * psi_mass
  double t_cutoff = 0.0;   // cutoff commutator term; t_rellich = t_core + t_cutoff
  double psi_mass = 0.0;   // <psi phi, phi>

  // the two cutoff-derivative pieces, evaluated with analytic psi derivatives
  double term_grad = 0.0;  // -2h^2 <grad psi . grad v, phi>
  double term_lap = 0.0;   // -h^2 <(lap psi) v, phi>

  double eps_disc = 0.0;  // Richardson estimate |T(res) - T(res/2)|
};

// mode: closed-form rectangle mode; p0: one of the four edge midpoints;
// mu in [h, 1/4]; resolution with lambda*dx <= 0.2.
CommutatorReport rellich_commutator_report(const EigenMode& mode, const Vec3& p0, double mu,
                                           int resolution = 256);

// the (grad psi, lap psi) pieces alone, for the mu >= h scale law and the
// mu < h breakdown sweep
struct CutoffTermReport {
  double mu = 0.0, h = 0.0;
  double term_grad = 0.0, term_lap = 0.0, t_cutoff = 0.0;
  double bound_sum_over_mu = 0.0;   // (|term_grad| + |term_lap|) / mu
  double budget_prefactor = 0.0;    // (h/mu)^2 + (h/mu): the estimate's growth
};
CutoffTermReport cutoff_term_bound(const EigenMode& mode, const Vec3& p0, double mu,
                                   int resolution = 256);

struct GreenReport {
  double mu = 0.0;
  double phi_x0 = 0.0;
  double lhs = 0.0;       // phi(x0) - ∫_B Δphi G dy
  double rhs = 0.0;       // c' mu^{1-n} ∫_S phi + (-c) mu^{2-n} ∫_S ∂_r phi
  double residual = 0.0;  // |lhs-rhs| / max(|phi(x0)|, 1e-12)
  double c_n = 0.0, c_n_prime = 0.0;
  double surf_phi = 0.0, surf_dphi = 0.0, ball_green = 0.0;
};

// panels controls the composite quadrature; residual decreases with panels.
GreenReport green_identity_residual(const EigenMode& ball_mode, const Vec3& x0, double mu,
                                    int panels = 24);

struct MeanValueReport {
  double h = 0.0;
  double phi_x0 = 0.0;
  double reconstructed = 0.0;
  double term_green = 0.0;  // -c h^{-2} ∫ phi |x0-y|^{2-n}
  double term_rho = 0.0;    // (c'/2) h^{-2-n} ∫ phi rho
  double term_plain = 0.0;  // ((2n-1)c'/2 + c) h^{-n} ∫ phi
  double rho_term_abs = 0.0, rho_bound = 0.0;  // |∫ phi rho| vs h^2 ∫ |phi|
  double error_budget = 0.0;                   // h^2 h^{-3/2} ||phi||_{B_h}
};

MeanValueReport mean_value_reconstruction(const EigenMode& ball_mode, const Vec3& x0,
                                          int panels = 24);

}  // namespace emass

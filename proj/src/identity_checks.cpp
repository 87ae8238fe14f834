#include "eigenmass/identity_checks.hpp"

#include <cmath>
#include <stdexcept>

#include "eigenmass/fd_field.hpp"
#include "eigenmass/quadrature.hpp"

namespace emass {

namespace {

// map computational coordinates (bottom edge carries p0) to physical ones
Vec3 to_physical(int face, double xc, double yc) {
  switch (face) {
    case 0: return {xc, yc, 0.0};
    case 1: return {1.0 - yc, xc, 0.0};
    case 2: return {xc, 1.0 - yc, 0.0};
    case 3: return {yc, xc, 0.0};
    default: throw std::logic_error("bad face");
  }
}

int edge_midpoint_face(const Vec3& p0) {
  const double eps = 1e-12;
  if (std::abs(p0.x - 0.5) < eps && std::abs(p0.y) < eps) return 0;
  if (std::abs(p0.x - 1.0) < eps && std::abs(p0.y - 0.5) < eps) return 1;
  if (std::abs(p0.x - 0.5) < eps && std::abs(p0.y - 1.0) < eps) return 2;
  if (std::abs(p0.x) < eps && std::abs(p0.y - 0.5) < eps) return 3;
  throw std::invalid_argument("rellich: p0 must be an edge midpoint of the unit square");
}

struct RellichFields {
  double h = 0.0;
  double t_rellich = 0.0, t_core = 0.0, t_cutoff = 0.0, psi_mass = 0.0;
  double term_grad = 0.0, term_lap = 0.0;
};

RellichFields rellich_terms(const EigenMode& mode, int face, double mu, int R) {
  const int parity = (mode.bc == BoundaryCondition::Dirichlet) ? -1 : +1;
  const double h = mode.h;
  const CutoffFamily& cf = build_cutoffs();

  SquareField phi = SquareField::zeros(R, parity, parity);
  const double dx = phi.dx;
  for (int j = 0; j <= R; ++j)
    for (int i = 0; i <= R; ++i) phi.ref(i, j) = mode.value(to_physical(face, i * dx, j * dx));

  // coordinate fields of the Fermi frame centered at the edge midpoint
  SquareField Xp = SquareField::zeros(R, 0, +1);  // x' = x - 1/2
  SquareField Yn = SquareField::zeros(R, +1, -1);  // x_n = y
  SquareField psi = SquareField::zeros(R, 0, +1);
  SquareField lap_psi = SquareField::zeros(R, 0, +1);
  SquareField dpsi_x = SquareField::zeros(R, 0, +1);
  SquareField dpsi_y = SquareField::zeros(R, 0, -1);
  for (int j = 0; j <= R; ++j)
    for (int i = 0; i <= R; ++i) {
      const double xp = i * dx - 0.5, yn = j * dx;
      Xp.ref(i, j) = xp;
      Yn.ref(i, j) = yn;
      const double bx = cf.bump(xp / mu), by = cf.bump(yn / mu);
      psi.ref(i, j) = bx * by;
      dpsi_x.ref(i, j) = cf.bump_d1(xp / mu) * by / mu;
      dpsi_y.ref(i, j) = bx * cf.bump_d1(yn / mu) / mu;
      lap_psi.ref(i, j) =
          (cf.bump_d2(xp / mu) * by + bx * cf.bump_d2(yn / mu)) / (mu * mu);
    }

  auto P = [&](const SquareField& f) {
    SquareField g = laplacian4(f);
    for (std::size_t k = 0; k < g.v.size(); ++k) g.v[k] = -h * h * g.v[k] - f.v[k];
    return g;
  };

  const SquareField gx = deriv_x(phi), gy = deriv_y(phi);
  SquareField v = multiply(Xp, gx);
  add_scaled(v, 1.0, multiply(Yn, gy));
  v.py = parity;  // x' dphi/dx and x_n dphi/dy are both parity-clean in x_n

  const SquareField u = multiply(psi, v);
  const SquareField Pphi = P(phi);
  const SquareField gPx = deriv_x(Pphi), gPy = deriv_y(Pphi);
  SquareField w2 = multiply(Xp, gPx);
  add_scaled(w2, 1.0, multiply(Yn, gPy));

  const SquareField Pu = P(u);
  const SquareField Pv = P(v);

  const double ip_Pu = inner(Pu, phi);
  const double ip_psiPv = inner(multiply(psi, Pv), phi);
  const double ip_psiw2 = inner(multiply(psi, w2), phi);

  RellichFields out;
  out.h = h;
  out.t_rellich = ip_Pu - ip_psiw2;
  out.t_core = ip_psiPv - ip_psiw2;
  out.t_cutoff = ip_Pu - ip_psiPv;
  out.psi_mass = inner(multiply(psi, phi), phi);

  // cutoff-derivative pieces with analytic psi derivatives:
  //   [P,psi]v = -h^2 ( (lap psi) v + 2 grad psi . grad v )
  const SquareField vx = deriv_x(v), vy = deriv_y(v);
  SquareField gradpsi_gradv = multiply(dpsi_x, vx);
  add_scaled(gradpsi_gradv, 1.0, multiply(dpsi_y, vy));
  out.term_grad = -2.0 * h * h * inner(gradpsi_gradv, phi);
  out.term_lap = -h * h * inner(multiply(lap_psi, v), phi);
  return out;
}

void check_rellich_pre(const EigenMode& mode, double mu, int R) {
  if (mode.domain.kind != DomainKind::UnitSquare || !mode.is_closed_form())
    throw std::invalid_argument("rellich: closed-form unit-square modes only (flat metric)");
  if (mode.bc == BoundaryCondition::None)
    throw std::invalid_argument("rellich: Dirichlet or Neumann mode required");
  if (!(mode.lambda > 0.0)) throw std::invalid_argument("rellich: lambda must be positive");
  if (mu > 0.25)
    throw std::invalid_argument("rellich: mu > 1/4 lets the cutoff reach a corner");
  if (mode.lambda / R > 0.2)
    throw std::invalid_argument("rellich: unresolved mode, need lambda*dx <= 0.2");
}

}  // namespace

CommutatorReport rellich_commutator_report(const EigenMode& mode, const Vec3& p0, double mu,
                                           int resolution) {
  check_rellich_pre(mode, mu, resolution);
  if (mu < 0.5 * mode.h)
    throw std::invalid_argument("rellich: scale mu below the h/2 commutator range");
  const int face = edge_midpoint_face(p0);

  const RellichFields fine = rellich_terms(mode, face, mu, resolution);
  const RellichFields coarse = rellich_terms(mode, face, mu, resolution / 2);

  CommutatorReport r;
  r.mode_id = mode.id;
  r.p0 = p0;
  r.mu = mu;
  r.h = mode.h;
  r.lambda = mode.lambda;
  r.resolution = resolution;
  r.t_rellich = fine.t_rellich;
  r.t_core = fine.t_core;
  r.t_cutoff = fine.t_cutoff;
  r.psi_mass = fine.psi_mass;
  r.term_grad = fine.term_grad;
  r.term_lap = fine.term_lap;
  r.eps_disc = std::abs(fine.t_rellich - coarse.t_rellich);
  return r;
}

CutoffTermReport cutoff_term_bound(const EigenMode& mode, const Vec3& p0, double mu,
                                   int resolution) {
  check_rellich_pre(mode, mu, resolution);  // note: mu < h is allowed here
  const int face = edge_midpoint_face(p0);
  if (mu < 8.0 * (1.0 / resolution) / 3.0)
    throw std::invalid_argument("cutoff_term_bound: mu under-resolved at this grid");
  const RellichFields f = rellich_terms(mode, face, mu, resolution);
  CutoffTermReport r;
  r.mu = mu;
  r.h = mode.h;
  r.term_grad = f.term_grad;
  r.term_lap = f.term_lap;
  r.t_cutoff = f.t_cutoff;
  r.bound_sum_over_mu = (std::abs(f.term_grad) + std::abs(f.term_lap)) / mu;
  const double q = mode.h / mu;
  r.budget_prefactor = q * q + q;
  return r;
}

namespace {

// ∫_{B_mu(x0)} F(r, |y|) dy for integrands zonal about the origin; d = |x0|.
// Composite 2-point Gauss per panel in both the radial and the polar factor.
double ball_integral(const std::function<double(double, double)>& F, double d, double mu,
                     int panels) {
  const GaussRule& g2 = gauss_rule(2);
  double total = 0.0;
  for (int pr = 0; pr < panels; ++pr) {
    const double r0 = mu * pr / panels, r1 = mu * (pr + 1) / panels;
    for (int ir = 0; ir < 2; ++ir) {
      const double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * g2.x[ir];
      const double wr = 0.5 * (r1 - r0) * g2.w[ir];
      double inner_t = 0.0;
      for (int pt = 0; pt < panels; ++pt) {
        const double t0 = -1.0 + 2.0 * pt / panels, t1 = -1.0 + 2.0 * (pt + 1) / panels;
        for (int it = 0; it < 2; ++it) {
          const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g2.x[it];
          const double wt = 0.5 * (t1 - t0) * g2.w[it];
          const double yn = std::sqrt(std::max(0.0, d * d + r * r + 2.0 * d * r * t));
          inner_t += wt * F(r, yn);
        }
      }
      total += wr * r * r * inner_t;
    }
  }
  return 2.0 * M_PI * total;
}

// ∫_{S_mu(x0)} F(t, |y|) dσ with t = cos of the polar angle about x0
double sphere_integral(const std::function<double(double, double)>& F, double d, double mu,
                       int panels) {
  const GaussRule& g2 = gauss_rule(2);
  double total = 0.0;
  for (int pt = 0; pt < panels; ++pt) {
    const double t0 = -1.0 + 2.0 * pt / panels, t1 = -1.0 + 2.0 * (pt + 1) / panels;
    for (int it = 0; it < 2; ++it) {
      const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g2.x[it];
      const double wt = 0.5 * (t1 - t0) * g2.w[it];
      const double yn = std::sqrt(std::max(0.0, d * d + mu * mu + 2.0 * d * mu * t));
      total += wt * F(t, yn);
    }
  }
  return 2.0 * M_PI * mu * mu * total;
}

void check_ball_pre(const EigenMode& mode, const Vec3& x0, double mu) {
  if (mode.family != EigenMode::Family::Ball3)
    throw std::invalid_argument("green: zonal unit-ball mode required");
  if (norm(x0) + mu > 1.0 + 1e-12)
    throw std::invalid_argument("green: ball B(x0,mu) must lie inside the unit ball");
  if (!(mu > 0.0)) throw std::invalid_argument("green: mu must be positive");
}

double radial_value(const EigenMode& mode, double r) {
  const double t = mode.lambda * r;
  return mode.norm_const * (t < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t);
}

}  // namespace

GreenReport green_identity_residual(const EigenMode& mode, const Vec3& x0, double mu,
                                    int panels) {
  check_ball_pre(mode, x0, mu);
  const double d = norm(x0);
  const double lam2 = mode.lambda * mode.lambda;
  const double c_n = -1.0 / (4.0 * M_PI);
  const double c_np = (2.0 - 3.0) * c_n;  // +1/(4π)

  GreenReport rep;
  rep.mu = mu;
  rep.c_n = c_n;
  rep.c_n_prime = c_np;
  rep.phi_x0 = radial_value(mode, d);

  // LHS: phi(x0) - ∫ Δphi G = phi(x0) + λ² c_n ∫ phi |x0-y|^{-1}
  rep.ball_green = ball_integral(
      [&](double r, double yn) { return radial_value(mode, yn) / std::max(r, 1e-300); }, d, mu,
      panels);
  rep.lhs = rep.phi_x0 + lam2 * c_n * rep.ball_green;

  // RHS: c' mu^{1-n} ∫_S phi - c_n mu^{2-n} ∫_S ∂_r phi
  rep.surf_phi =
      sphere_integral([&](double, double yn) { return radial_value(mode, yn); }, d, mu, panels);
  rep.surf_dphi = sphere_integral(
      [&](double t, double yn) {
        // ∂_r in the polar frame about x0: phi'(|y|) * d|y|/dr
        const double dyn_dr = (yn > 1e-14) ? (mu + d * t) / yn : 1.0;
        return ball3_mode_radial_derivative(mode, yn) * dyn_dr;
      },
      d, mu, panels);
  rep.rhs = c_np / (mu * mu) * rep.surf_phi - c_n / mu * rep.surf_dphi;
  rep.residual = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.phi_x0), 1e-12);
  return rep;
}

MeanValueReport mean_value_reconstruction(const EigenMode& mode, const Vec3& x0, int panels) {
  const double hh = mode.h;
  check_ball_pre(mode, x0, hh);
  const double d = norm(x0);
  const double c_n = -1.0 / (4.0 * M_PI);
  const double c_np = -c_n;

  MeanValueReport rep;
  rep.h = hh;
  rep.phi_x0 = radial_value(mode, d);

  const double int_green = ball_integral(
      [&](double r, double yn) { return radial_value(mode, yn) / std::max(r, 1e-300); }, d, hh,
      panels);
  const double int_rho = ball_integral(
      [&](double r, double yn) { return radial_value(mode, yn) * r * r; }, d, hh, panels);
  const double int_plain =
      ball_integral([&](double, double yn) { return radial_value(mode, yn); }, d, hh, panels);
  const double int_abs = ball_integral(
      [&](double, double yn) { return std::abs(radial_value(mode, yn)); }, d, hh, panels);
  const double int_sq = ball_integral(
      [&](double, double yn) {
        const double v = radial_value(mode, yn);
        return v * v;
      },
      d, hh, panels);

  const double h2 = hh * hh;
  rep.term_green = -c_n / h2 * int_green;
  rep.term_rho = 0.5 * c_np / (h2 * h2 * hh) * int_rho;
  rep.term_plain = (2.5 * c_np + c_n) / (hh * hh * hh) * int_plain;
  rep.reconstructed = rep.term_green + rep.term_rho + rep.term_plain;
  rep.rho_term_abs = std::abs(int_rho);
  rep.rho_bound = h2 * int_abs;
  rep.error_budget = h2 * std::pow(hh, -1.5) * std::sqrt(int_sq);
  return rep;
}

}  // namespace emass

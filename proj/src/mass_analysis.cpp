#include "eigenmass/mass_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eigenmass/bessel.hpp"
#include "eigenmass/fd_field.hpp"
#include "eigenmass/kernels.hpp"
#include "eigenmass/quadrature.hpp"

namespace emass {

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("geometric_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double q = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo * std::exp(q * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

MassAnalyzer::MassAnalyzer(EigenMode mode, std::shared_ptr<const Grid> grid)
    : mode_(std::move(mode)), grid_(std::move(grid)) {
  if (mode_.domain.kind != grid_->domain.kind)
    throw std::invalid_argument("MassAnalyzer: mode/grid domain mismatch");
  const std::vector<double> vals = sample_on_grid(mode_, *grid_);
  abs_vals_.resize(vals.size());
  if (mode_.family == EigenMode::Family::SphereHW) {
    // zonal modulus of the complex beam
    for (std::size_t i = 0; i < vals.size(); ++i)
      abs_vals_[i] = std::sqrt(mode_.abs2(grid_->nodes[i]));
  } else {
    for (std::size_t i = 0; i < vals.size(); ++i) abs_vals_[i] = std::abs(vals[i]);
  }
}

double MassAnalyzer::l2_norm_sq() const {
  return kernels::weighted_sumsq(grid_->weights.data(), abs_vals_.data(), abs_vals_.size());
}

double MassAnalyzer::ball_mass(const Vec3& x0, double mu, bool* under_resolved) const {
  const BallRegion reg = ball_region(*grid_, x0, mu);
  if (under_resolved) *under_resolved = (mu < 4.0 * grid_->spacing);
  return kernels::gather_weighted_sumsq(reg.clipped_weights.data(), abs_vals_.data(),
                                        reg.node_indices.data(), reg.node_indices.size());
}

double MassAnalyzer::ball_mass_fast(const Vec3& x0, double mu) const {
  const Grid& g = *grid_;
  double s = 0.0;
  if (g.domain.kind == DomainKind::UnitSquare) {
    const int R = g.resolution;
    const double d = g.spacing;
    const int i0 = std::max(0, static_cast<int>(std::floor((x0.x - mu) / d)));
    const int i1 = std::min(R, static_cast<int>(std::ceil((x0.x + mu) / d)));
    const int j0 = std::max(0, static_cast<int>(std::floor((x0.y - mu) / d)));
    const int j1 = std::min(R, static_cast<int>(std::ceil((x0.y + mu) / d)));
    const double mu2 = mu * mu;
    for (int j = j0; j <= j1; ++j) {
      const double dy = j * d - x0.y;
      if (dy * dy > mu2) continue;
      const double half = std::sqrt(mu2 - dy * dy);
      const int ia = std::max(i0, static_cast<int>(std::ceil((x0.x - half) / d)));
      const int ib = std::min(i1, static_cast<int>(std::floor((x0.x + half) / d)));
      for (int i = ia; i <= ib; ++i) {
        const std::size_t id = g.square_index(i, j);
        s += g.weights[id] * abs_vals_[id] * abs_vals_[id];
      }
    }
    return s;
  }
  if (g.domain.kind == DomainKind::UnitDisk) {
    const double d = norm(x0);
    const double dth = 2.0 * M_PI / g.n2;
    const double a0 = std::atan2(x0.y, x0.x);
    if (d <= mu) s += g.weights[0] * abs_vals_[0] * abs_vals_[0];
    const double mu2 = mu * mu;
    for (int i = 1; i <= g.n1; ++i) {
      const double r = i * g.spacing;
      if (std::abs(r - d) > mu) continue;
      int k0 = 0, k1 = g.n2 - 1;
      if (d > 1e-12) {
        const double carg = (r * r + d * d - mu2) / (2.0 * r * d);
        if (carg >= 1.0) continue;
        if (carg > -1.0) {
          const double halfang = std::acos(carg);
          const int kc = static_cast<int>(std::round(a0 / dth));
          const int kw = static_cast<int>(std::floor(halfang / dth));
          k0 = kc - kw;
          k1 = kc + kw;
        }
      }
      if (k1 - k0 + 1 >= g.n2) {
        k0 = 0;
        k1 = g.n2 - 1;
      }
      for (int k = k0; k <= k1; ++k) {
        const int kk = ((k % g.n2) + g.n2) % g.n2;
        const std::size_t id = g.disk_index(i, kk);
        const Vec3 q = g.nodes[id];
        const double ddx = q.x - x0.x, ddy = q.y - x0.y;
        if (ddx * ddx + ddy * ddy > mu2) continue;
        s += g.weights[id] * abs_vals_[id] * abs_vals_[id];
      }
    }
    return s;
  }
  if (g.domain.kind == DomainKind::SphereS2) {
    const double thc = std::acos(std::clamp(x0.z / norm(x0), -1.0, 1.0));
    const double dth = M_PI / g.n1;
    const double cmu = std::cos(mu);
    for (int j = 1; j <= g.n1; ++j) {
      const double th = (j - 0.5) * dth;
      if (std::abs(th - thc) > mu + dth) continue;
      for (int k = 0; k < g.n2; ++k) {
        const std::size_t id = g.sphere_index(j, k);
        if (dot(g.nodes[id], x0) < cmu) continue;
        s += g.weights[id] * abs_vals_[id] * abs_vals_[id];
      }
    }
    return s;
  }
  // ball: fall back to the clipped region
  return ball_mass(x0, mu, nullptr);
}

namespace {

int oscillation_panels(double lambda, double mu, int base) {
  return std::max(base, static_cast<int>(std::ceil(4.0 * lambda * mu)));
}

double fine_square(const EigenMode& mode, const Vec3& x0, double mu) {
  const int nth = std::min(2048, std::max(256, static_cast<int>(16 * std::ceil(mode.lambda * mu))));
  const GaussRule& gt = gauss_rule(2);
  double total = 0.0;
  for (int p = 0; p < nth; ++p) {
    const double t0 = 2.0 * M_PI * p / nth, t1 = 2.0 * M_PI * (p + 1) / nth;
    for (int it = 0; it < 2; ++it) {
      const double th = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * gt.x[it];
      const double wt = 0.5 * (t1 - t0) * gt.w[it];
      const double c = std::cos(th), sn = std::sin(th);
      double rmax = mu;
      if (c > 1e-14) rmax = std::min(rmax, (1.0 - x0.x) / c);
      if (c < -1e-14) rmax = std::min(rmax, (0.0 - x0.x) / c);
      if (sn > 1e-14) rmax = std::min(rmax, (1.0 - x0.y) / sn);
      if (sn < -1e-14) rmax = std::min(rmax, (0.0 - x0.y) / sn);
      if (rmax <= 0.0) continue;
      const int nr = std::max(8, static_cast<int>(std::ceil(mode.lambda * rmax)) + 4);
      const double radial = integrate(
          [&](double r) {
            return mode.abs2({x0.x + r * c, x0.y + r * sn, 0.0}) * r;
          },
          0.0, rmax, std::min(nr, 48));
      total += wt * radial;
    }
  }
  return total;
}

double fine_disk(const EigenMode& mode, const Vec3& x0, double mu) {
  const double d = std::hypot(x0.x, x0.y);
  const double th0 = std::atan2(x0.y, x0.x);
  const int m = mode.p1;
  const double lam = mode.lambda;
  const double N = mode.norm_const;
  const double rlo = std::max(0.0, d - mu), rhi = std::min(1.0, d + mu);
  auto angular = [&](double r) {
    double beta;
    if (d < 1e-14) {
      beta = (r <= mu) ? M_PI : 0.0;
    } else if (r < 1e-14) {
      beta = (d <= mu) ? M_PI : 0.0;
    } else {
      const double carg = (r * r + d * d - mu * mu) / (2.0 * r * d);
      beta = std::acos(std::clamp(carg, -1.0, 1.0));
    }
    if (m == 0) return mode.cos_parity ? 2.0 * beta : 0.0;
    // ∫ over θ0±β of cos^2/sin^2(m θ)
    const double osc = std::cos(2.0 * m * th0) * std::sin(2.0 * m * beta) / (2.0 * m);
    return mode.cos_parity ? beta + osc : beta - osc;
  };
  const int panels = oscillation_panels(lam, mu, 256);
  const GaussRule& g2 = gauss_rule(2);
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = rlo + (rhi - rlo) * p / panels, b = rlo + (rhi - rlo) * (p + 1) / panels;
    for (int iq = 0; iq < 2; ++iq) {
      const double r = 0.5 * (a + b) + 0.5 * (b - a) * g2.x[iq];
      const double w = 0.5 * (b - a) * g2.w[iq];
      const double jr = bessel_j(m, lam * r);
      total += w * N * N * jr * jr * r * angular(r);
    }
  }
  return total;
}

double fine_sphere(const EigenMode& mode, const Vec3& p, double mu) {
  const double n2 = mode.norm_const * mode.norm_const;
  const int n = mode.p1;
  const double cth = std::clamp(p.z / norm(p), -1.0, 1.0);
  const double thc = std::acos(cth);
  const double zlo = std::cos(std::min(M_PI, thc + mu));
  const double zhi = std::cos(std::max(0.0, thc - mu));
  const double sth = std::sin(thc);
  auto width = [&](double z) {
    // azimuthal width of the cap at height z (the z-range is already clipped,
    // so a polar cap is the full circle)
    if (sth < 1e-14) return 2.0 * M_PI;
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    if (s < 1e-14) return 0.0;
    const double carg = (std::cos(mu) - z * cth) / (s * sth);
    if (carg >= 1.0) return 0.0;
    if (carg <= -1.0) return 2.0 * M_PI;
    return 2.0 * std::acos(carg);
  };
  const int panels = std::max(256, static_cast<int>(std::ceil(
                                       8.0 * mu * std::sqrt(static_cast<double>(n) + 1.0))));
  const GaussRule& g2 = gauss_rule(2);
  double total = 0.0;
  for (int p2 = 0; p2 < panels; ++p2) {
    const double a = zlo + (zhi - zlo) * p2 / panels, b = zlo + (zhi - zlo) * (p2 + 1) / panels;
    for (int iq = 0; iq < 2; ++iq) {
      const double z = 0.5 * (a + b) + 0.5 * (b - a) * g2.x[iq];
      const double w = 0.5 * (b - a) * g2.w[iq];
      const double t = 1.0 - z * z;
      const double amp2 = (t > 0.0) ? std::exp(n * std::log(t)) : 0.0;
      total += w * amp2 * width(z);
    }
  }
  return n2 * total;
}

double fine_ball(const EigenMode& mode, const Vec3& x0, double mu) {
  const double d = norm(x0);
  const int panels = oscillation_panels(mode.lambda, mu, 64);
  const GaussRule& g2 = gauss_rule(2);
  double total = 0.0;
  for (int pt = 0; pt < panels; ++pt) {
    const double t0 = -1.0 + 2.0 * pt / panels, t1 = -1.0 + 2.0 * (pt + 1) / panels;
    for (int it = 0; it < 2; ++it) {
      const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g2.x[it];
      const double wt = 0.5 * (t1 - t0) * g2.w[it];
      // clip the ray against the unit sphere
      double rmax = mu;
      const double disc = 1.0 - d * d * (1.0 - t * t);
      if (disc >= 0.0) rmax = std::min(rmax, -d * t + std::sqrt(disc));
      if (rmax <= 0.0) continue;
      const double radial = integrate(
          [&](double r) {
            const double yn = std::sqrt(std::max(0.0, d * d + r * r + 2.0 * d * r * t));
            return mode.abs2({yn, 0.0, 0.0}) * r * r;
          },
          0.0, rmax, 32);
      total += wt * radial;
    }
  }
  return 2.0 * M_PI * total;
}

}  // namespace

double ball_mass_fine(const EigenMode& mode, const Vec3& x0, double mu) {
  if (!mode.is_closed_form())
    throw std::invalid_argument("ball_mass_fine: closed-form modes only");
  switch (mode.domain.kind) {
    case DomainKind::UnitSquare: return fine_square(mode, x0, mu);
    case DomainKind::UnitDisk: return fine_disk(mode, x0, mu);
    case DomainKind::SphereS2: return fine_sphere(mode, x0, mu);
    case DomainKind::UnitBall3: return fine_ball(mode, x0, mu);
  }
  throw std::invalid_argument("ball_mass_fine: unsupported domain");
}

namespace {

void fit_profile(MassProfile& p) {
  std::vector<double> lx, ly;
  for (const MassSample& s : p.samples)
    if (s.in_fit && s.mass > 0.0) {
      lx.push_back(std::log(s.mu));
      ly.push_back(std::log(s.mass));
    }
  if (lx.size() < 2) throw std::runtime_error("mass_profile: too few usable samples for a fit");
  const LineFit f = fit_line(lx, ly);
  p.alpha = f.slope;
  p.log_c = f.intercept;
  p.fit_residual = f.rms_residual;
}

void check_mu_grid(const EigenMode& mode, const std::vector<double>& mu_grid) {
  if (mu_grid.size() < 8)
    throw std::invalid_argument("mass_profile: need >= 8 geometric mu samples");
  const double diam = mode.domain.diameter();
  const double h_floor = std::isfinite(mode.h) ? mode.h : 0.0;  // constant mode: no floor
  for (double mu : mu_grid)
    if (mu < h_floor * (1.0 - 1e-9) || mu > diam * (1.0 + 1e-9))
      throw std::invalid_argument("mass_profile: mu grid must lie in [h, diam]");
  const double q0 = mu_grid[1] / mu_grid[0];
  for (std::size_t i = 1; i + 1 < mu_grid.size(); ++i) {
    const double q = mu_grid[i + 1] / mu_grid[i];
    if (std::abs(q - q0) > 1e-6 * q0)
      throw std::invalid_argument("mass_profile: mu grid must be geometric");
  }
}

}  // namespace

MassProfile mass_profile(const MassAnalyzer& an, const Vec3& x0,
                         const std::vector<double>& mu_grid) {
  check_mu_grid(an.mode(), mu_grid);
  MassProfile p;
  p.mode_id = an.mode().id;
  p.center = x0;
  const double h = an.mode().h;
  for (double mu : mu_grid) {
    MassSample s;
    s.mu = mu;
    s.mass = an.ball_mass(x0, mu, &s.under_resolved);
    // discrete modes are quadrature-limited near the wavelength scale;
    // closed-form samples stay in the fit
    s.in_fit = !s.under_resolved &&
               (an.mode().is_closed_form() || !std::isfinite(h) || mu >= 3.0 * h);
    p.samples.push_back(s);
  }
  fit_profile(p);
  return p;
}

MassProfile mass_profile_fine(const EigenMode& mode, const Vec3& x0,
                              const std::vector<double>& mu_grid) {
  check_mu_grid(mode, mu_grid);
  MassProfile p;
  p.mode_id = mode.id;
  p.center = x0;
  for (double mu : mu_grid) {
    MassSample s;
    s.mu = mu;
    s.mass = ball_mass_fine(mode, x0, mu);
    p.samples.push_back(s);
  }
  fit_profile(p);
  return p;
}

std::vector<SweepRow> nonconcentration_sweep(const std::vector<MassAnalyzer>& modes,
                                             const std::vector<Vec3>& centers,
                                             const std::vector<double>& mu_grid) {
  std::vector<SweepRow> rows;
  rows.reserve(modes.size());
  for (const MassAnalyzer& an : modes) {
    SweepRow row;
    row.mode_id = an.mode().id;
    row.lambda = an.mode().lambda;
    const double h = an.mode().h;
    for (const Vec3& c : centers)
      for (double mu : mu_grid) {
        if (std::isfinite(h) && mu < h) continue;
        const double m = an.ball_mass(c, mu, nullptr);
        row.k_mass_over_mu = std::max(row.k_mass_over_mu, m / mu);
      }
    rows.push_back(row);
  }
  return rows;
}

namespace {

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SupNorm sup_norm(const EigenMode& mode, const Grid& grid) {
  SupNorm out;
  if (mode.family == EigenMode::Family::Discrete) {
    const std::vector<double>& vals = *mode.values;
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (std::abs(vals[i]) > out.value) {
        out.value = std::abs(vals[i]);
        out.argmax = mode.grid->nodes[i];
      }
    return out;
  }
  switch (mode.family) {
    case EigenMode::Family::Rectangle: {
      if (mode.bc == BoundaryCondition::Dirichlet) {
        out.value = 2.0;
        out.argmax = {0.5 / mode.p1, 0.5 / mode.p2, 0.0};
      } else {
        const double cj = (mode.p1 == 0) ? 1.0 : std::sqrt(2.0);
        const double ck = (mode.p2 == 0) ? 1.0 : std::sqrt(2.0);
        out.value = cj * ck;
        out.argmax = {0.0, 0.0, 0.0};
      }
      return out;
    }
    case EigenMode::Family::Disk: {
      // coarse radial scan, then golden refinement of |J_m(lambda r)|
      const int scan = std::max(64, 8 * static_cast<int>(mode.lambda));
      double best_r = 0.0, best = std::abs(bessel_j(mode.p1, 0.0));
      for (int i = 1; i <= scan; ++i) {
        const double r = static_cast<double>(i) / scan;
        const double v = std::abs(bessel_j(mode.p1, mode.lambda * r));
        if (v > best) {
          best = v;
          best_r = r;
        }
      }
      const double lo = std::max(0.0, best_r - 1.0 / scan);
      const double hi = std::min(1.0, best_r + 1.0 / scan);
      const double r = golden_max(
          [&](double rr) { return std::abs(bessel_j(mode.p1, mode.lambda * rr)); }, lo, hi);
      out.value = mode.norm_const * std::abs(bessel_j(mode.p1, mode.lambda * r));
      const double th = mode.cos_parity ? 0.0 : M_PI / (2.0 * std::max(1, mode.p1));
      out.argmax = {r * std::cos(th), r * std::sin(th), 0.0};
      return out;
    }
    case EigenMode::Family::SphereHW:
      out.value = mode.norm_const;  // modulus peaks on the equator
      out.argmax = {1.0, 0.0, 0.0};
      return out;
    case EigenMode::Family::Ball3:
      out.value = mode.norm_const;
      out.argmax = {0.0, 0.0, 0.0};
      return out;
    default: break;
  }
  // generic fallback: best node
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = std::sqrt(mode.abs2(grid.nodes[i]));
    if (v > out.value) {
      out.value = v;
      out.argmax = grid.nodes[i];
    }
  }
  return out;
}

Thm2Report thm2_ratio(const MassAnalyzer& an) {
  const EigenMode& mode = an.mode();
  if (!(mode.lambda > 0.0) || !std::isfinite(mode.h))
    throw std::invalid_argument("thm2_ratio: requires lambda > 0");
  const Grid& g = an.grid();
  if (g.spacing > 0.5 * mode.h)
    throw std::invalid_argument("thm2_ratio: center set too sparse (spacing > h/2)");

  Thm2Report rep;
  rep.mode_id = mode.id;
  rep.lambda = mode.lambda;
  rep.h = mode.h;
  const SupNorm sn = sup_norm(mode, g);
  rep.sup = sn.value;
  rep.sup_point = sn.argmax;

  // pass 1: raw masses at every node center; pass 2: clipped quadrature on the leaders
  struct Cand {
    double mass;
    std::size_t node;
  };
  std::vector<Cand> top;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double m = an.ball_mass_fast(g.nodes[i], mode.h);
    if (top.size() < 8) {
      top.push_back({m, i});
      std::sort(top.begin(), top.end(), [](auto& a, auto& b) { return a.mass > b.mass; });
    } else if (m > top.back().mass) {
      top.back() = {m, i};
      std::sort(top.begin(), top.end(), [](auto& a, auto& b) { return a.mass > b.mass; });
    }
  }
  double best = 0.0;
  for (const Cand& c : top) {
    const double m = an.ball_mass(g.nodes[c.node], mode.h, nullptr);
    if (m > best) {
      best = m;
      rep.mass_point = g.nodes[c.node];
    }
  }
  rep.s_h = std::sqrt(best);
  const double n = mode.domain.dimension;
  rep.ratio = rep.sup / (std::pow(mode.h, -0.5 * n) * rep.s_h);
  return rep;
}

double h_sobolev_norm(const EigenMode& mode, int order, int resolution) {
  if (order < 1 || order > 2) throw std::invalid_argument("h_sobolev_norm: order in {1,2}");
  if (mode.domain.kind != DomainKind::UnitSquare)
    throw std::invalid_argument("h_sobolev_norm: unit-square modes only");
  if (mode.lambda / resolution > 0.3)
    throw std::invalid_argument("h_sobolev_norm: resolution insufficient (lambda*dx > 0.3)");

  const int parity = (mode.bc == BoundaryCondition::Dirichlet) ? -1 : +1;
  SquareField phi = SquareField::zeros(resolution, parity, parity);
  if (mode.family == EigenMode::Family::Discrete) {
    if (mode.grid->resolution != resolution)
      throw std::invalid_argument("h_sobolev_norm: discrete mode at a different resolution");
    for (std::size_t i = 0; i < phi.v.size(); ++i) phi.v[i] = (*mode.values)[i];
  } else {
    const double dx = phi.dx;
    for (int j = 0; j <= resolution; ++j)
      for (int i = 0; i <= resolution; ++i) phi.ref(i, j) = mode.value({i * dx, j * dx, 0.0});
  }

  double total = inner(phi, phi);
  if (!(mode.lambda > 0.0)) return total;  // constant mode: derivative terms vanish
  const double h2 = mode.h * mode.h;
  const SquareField fx = deriv_x(phi), fy = deriv_y(phi);
  total += h2 * (inner(fx, fx) + inner(fy, fy));
  if (order == 2) {
    const SquareField fxx = deriv_x(fx), fxy = deriv_y(fx), fyy = deriv_y(fy);
    total += h2 * h2 * (inner(fxx, fxx) + inner(fxy, fxy) + inner(fyy, fyy));
  }
  return total;
}

LayerReport boundary_layer_diagnostic(const EigenMode& mode) {
  if (!mode.domain.boundary_present)
    throw std::invalid_argument("boundary_layer_diagnostic: domain has no boundary");
  if (!(mode.lambda > 0.0) || !std::isfinite(mode.h))
    throw std::invalid_argument("boundary_layer_diagnostic: requires lambda > 0");
  const double L = M_PI * mode.h / 8.0;

  LayerReport rep;
  rep.layer_width = L;

  auto visit = [&](const Vec3& p, double xn) {
    const double v = std::abs(mode.value(p));
    const double psi = std::abs(std::cos(2.0 * xn / mode.h)) * v;
    if (v > rep.max_phi_layer) rep.max_phi_layer = v;
    if (xn < 1e-14 && psi > rep.max_psi_inner) rep.max_psi_inner = psi;
    if (std::abs(xn - L) < 1e-14 && psi > rep.max_psi_outer) rep.max_psi_outer = psi;
  };

  if (mode.family == EigenMode::Family::Discrete) {
    const Grid& g = *mode.grid;
    if (L < 4.0 * g.spacing)
      throw std::invalid_argument("boundary_layer_diagnostic: layer unresolved on this grid");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const FermiCoords f = fermi_coordinates(mode.domain, g.nodes[i]);
      if (f.xn > L + 0.5 * g.spacing) continue;
      const double v = std::abs((*mode.values)[i]);
      const double psi = std::abs(std::cos(2.0 * f.xn / mode.h)) * v;
      if (f.xn <= L + 1e-14) rep.max_phi_layer = std::max(rep.max_phi_layer, v);
      if (f.xn < 0.5 * g.spacing) rep.max_psi_inner = std::max(rep.max_psi_inner, psi);
      if (std::abs(f.xn - L) <= 0.5 * g.spacing)
        rep.max_psi_outer = std::max(rep.max_psi_outer, psi);
    }
  } else {
    const int nt = 2048, nn = 32;
    for (int a = 0; a <= nt; ++a)
      for (int b = 0; b <= nn; ++b) {
        const double xn = L * b / nn;
        switch (mode.domain.kind) {
          case DomainKind::UnitSquare: {
            const double s = static_cast<double>(a) / nt;
            visit({s, xn, 0.0}, xn);          // bottom
            visit({s, 1.0 - xn, 0.0}, xn);    // top
            visit({xn, s, 0.0}, xn);          // left
            visit({1.0 - xn, s, 0.0}, xn);    // right
            break;
          }
          case DomainKind::UnitDisk: {
            const double th = 2.0 * M_PI * a / nt;
            const double r = 1.0 - xn;
            visit({r * std::cos(th), r * std::sin(th), 0.0}, xn);
            break;
          }
          case DomainKind::UnitBall3: {
            // zonal modes: the azimuth is immaterial
            const double th = M_PI * a / nt;
            const double r = 1.0 - xn;
            visit({r * std::sin(th), 0.0, r * std::cos(th)}, xn);
            break;
          }
          default: break;
        }
      }
  }
  rep.ratio = rep.max_phi_layer /
              (std::sqrt(2.0) * std::max({rep.max_psi_inner, rep.max_psi_outer, 1e-300}));
  return rep;
}

}  // namespace emass

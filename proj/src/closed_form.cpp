#include "eigenmass/closed_form.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eigenmass/bessel.hpp"

namespace emass {

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::None: return "none";
  }
  return "?";
}

BoundaryCondition bc_from_string(const std::string& s) {
  if (s == "dirichlet" || s == "D") return BoundaryCondition::Dirichlet;
  if (s == "neumann" || s == "N") return BoundaryCondition::Neumann;
  if (s == "none") return BoundaryCondition::None;
  throw std::invalid_argument("unknown boundary condition: " + s);
}

namespace {

// composite Gauss quadrature of f on [0,1], resolving oscillation scale alpha
double radial_integral(const std::function<double(double)>& f, double alpha) {
  const int panels = std::max(8, static_cast<int>(std::ceil(alpha)));
  double s = 0.0;
  for (int p = 0; p < panels; ++p)
    s += integrate(f, static_cast<double>(p) / panels, static_cast<double>(p + 1) / panels, 8);
  return s;
}

double beam_amplitude(int n, double z2) {
  // (1-z^2)^{n/2} in log space
  const double t = 1.0 - z2;
  if (t <= 0.0) return 0.0;
  return std::exp(0.5 * n * std::log(t));
}

}  // namespace

double EigenMode::value(const Vec3& p) const {
  switch (family) {
    case Family::Rectangle: {
      if (bc == BoundaryCondition::Dirichlet)
        return 2.0 * std::sin(p1 * M_PI * p.x) * std::sin(p2 * M_PI * p.y);
      const double cj = (p1 == 0) ? 1.0 : std::sqrt(2.0);
      const double ck = (p2 == 0) ? 1.0 : std::sqrt(2.0);
      return cj * ck * std::cos(p1 * M_PI * p.x) * std::cos(p2 * M_PI * p.y);
    }
    case Family::Disk: {
      const double r = std::hypot(p.x, p.y);
      const double th = std::atan2(p.y, p.x);
      const double ang = cos_parity ? std::cos(p1 * th) : std::sin(p1 * th);
      return norm_const * bessel_j(p1, lambda * r) * ang;
    }
    case Family::SphereHW: {
      const double z2 = p.z * p.z;
      const double ph = std::atan2(p.y, p.x);
      return norm_const * beam_amplitude(p1, z2) * std::cos(p1 * ph);
    }
    case Family::Ball3: {
      const double r = norm(p);
      const double t = lambda * r;
      return norm_const * (t < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t);
    }
    case Family::Discrete: {
      // nearest-node lookup
      if (!grid || !values) throw std::logic_error("discrete mode without payload");
      std::size_t best = 0;
      double bd = 1e300;
      for (std::size_t i = 0; i < grid->size(); ++i) {
        const double d = geodesic_distance(grid->domain, grid->nodes[i], p);
        if (d < bd) {
          bd = d;
          best = i;
        }
      }
      return (*values)[best];
    }
  }
  return 0.0;
}

double EigenMode::abs2(const Vec3& p) const {
  if (family == Family::SphereHW) {
    const double a = norm_const * beam_amplitude(p1, p.z * p.z);
    return a * a;
  }
  const double v = value(p);
  return v * v;
}

EigenMode rectangle_mode(int j, int k, BoundaryCondition bc) {
  if (bc == BoundaryCondition::Dirichlet && (j < 1 || k < 1))
    throw std::invalid_argument("rectangle_mode: Dirichlet needs j,k >= 1");
  if (bc == BoundaryCondition::Neumann && (j < 0 || k < 0))
    throw std::invalid_argument("rectangle_mode: Neumann needs j,k >= 0");
  if (bc == BoundaryCondition::None)
    throw std::invalid_argument("rectangle_mode: bc must be Dirichlet or Neumann");
  EigenMode m;
  m.domain = Domain::make(DomainKind::UnitSquare);
  m.bc = bc;
  m.family = EigenMode::Family::Rectangle;
  m.p1 = j;
  m.p2 = k;
  m.lambda = M_PI * std::sqrt(static_cast<double>(j) * j + static_cast<double>(k) * k);
  m.h = (m.lambda > 0.0) ? 1.0 / m.lambda : std::numeric_limits<double>::infinity();
  m.id = "sq:" + std::string(bc == BoundaryCondition::Dirichlet ? "D" : "N") + ":" +
         std::to_string(j) + "x" + std::to_string(k);
  return m;
}

EigenMode disk_mode(int m_ang, int k, BoundaryCondition bc, bool cos_parity) {
  if (bc == BoundaryCondition::None)
    throw std::invalid_argument("disk_mode: bc must be Dirichlet or Neumann");
  if (!cos_parity && m_ang < 1)
    throw std::invalid_argument("disk_mode: sin parity needs m >= 1");
  const double alpha = bessel_zero(
      m_ang, k, bc == BoundaryCondition::Dirichlet ? BesselZeroKind::OfJ : BesselZeroKind::OfJPrime);
  EigenMode m;
  m.domain = Domain::make(DomainKind::UnitDisk);
  m.bc = bc;
  m.family = EigenMode::Family::Disk;
  m.p1 = m_ang;
  m.p2 = k;
  m.cos_parity = cos_parity;
  m.lambda = alpha;
  m.h = 1.0 / alpha;
  const double radial =
      radial_integral([&](double r) { return bessel_j(m_ang, alpha * r) *
                                             bessel_j(m_ang, alpha * r) * r; },
                      alpha);
  const double angular = (m_ang == 0 && cos_parity) ? 2.0 * M_PI : M_PI;
  m.norm_const = 1.0 / std::sqrt(radial * angular);
  m.id = "disk:" + std::string(bc == BoundaryCondition::Dirichlet ? "D" : "N") + ":m" +
         std::to_string(m_ang) + "k" + std::to_string(k) + (cos_parity ? ":cos" : ":sin");
  return m;
}

EigenMode sphere_highest_weight(int n) {
  if (n < 1 || n > 5000)
    throw std::invalid_argument("sphere_highest_weight: n out of range [1,5000]");
  EigenMode m;
  m.domain = Domain::make(DomainKind::SphereS2);
  m.bc = BoundaryCondition::None;
  m.family = EigenMode::Family::SphereHW;
  m.p1 = n;
  m.lambda = std::sqrt(static_cast<double>(n) * (n + 1.0));
  m.h = 1.0 / m.lambda;
  // ∫_{S2} (1-z^2)^n dσ = 2π √π Γ(n+1)/Γ(n+3/2), evaluated in log space
  const double log_int =
      std::log(2.0 * M_PI) + 0.5 * std::log(M_PI) + std::lgamma(n + 1.0) - std::lgamma(n + 1.5);
  m.norm_const = std::exp(-0.5 * log_int);
  m.id = "s2hw:n" + std::to_string(n);
  return m;
}

EigenMode ball3_mode(int k) {
  if (k < 1 || k > 50) throw std::invalid_argument("ball3_mode: k out of range [1,50]");
  EigenMode m;
  m.domain = Domain::make(DomainKind::UnitBall3);
  m.bc = BoundaryCondition::Dirichlet;
  m.family = EigenMode::Family::Ball3;
  m.p1 = k;
  m.lambda = k * M_PI;
  m.h = 1.0 / m.lambda;
  const double lam = m.lambda;
  const double radial = radial_integral(
      [&](double r) {
        const double t = lam * r;
        const double s = (t < 1e-8) ? 1.0 - t * t / 6.0 : std::sin(t) / t;
        return s * s * r * r;
      },
      lam);
  m.norm_const = 1.0 / std::sqrt(4.0 * M_PI * radial);
  m.id = "ball:k" + std::to_string(k);
  return m;
}

double ball3_mode_radial_derivative(const EigenMode& mode, double r) {
  if (mode.family != EigenMode::Family::Ball3)
    throw std::invalid_argument("radial derivative: not a ball mode");
  const double t = mode.lambda * r;
  if (t < 1e-6) return -mode.norm_const * mode.lambda * t / 3.0;
  // d/dr [sin(λr)/(λr)] = λ (cos t / t - sin t / t²)
  return mode.norm_const * mode.lambda * (std::cos(t) / t - std::sin(t) / (t * t));
}

std::vector<double> sample_on_grid(const EigenMode& mode, const Grid& grid) {
  if (mode.family == EigenMode::Family::Discrete) {
    if (mode.grid.get() != &grid && (mode.grid->domain.kind != grid.domain.kind ||
                                     mode.grid->resolution != grid.resolution))
      throw std::invalid_argument("sample_on_grid: discrete mode bound to another grid");
    return *mode.values;
  }
  if (mode.domain.kind != grid.domain.kind)
    throw std::invalid_argument("sample_on_grid: mode/grid domain mismatch");
  std::vector<double> v(grid.size());
  switch (grid.domain.kind) {
    case DomainKind::UnitDisk: {
      // one Bessel evaluation per ring
      std::vector<double> radial(grid.n1 + 1);
      for (int i = 1; i <= grid.n1; ++i)
        radial[i] = bessel_j(mode.p1, mode.lambda * (i * grid.spacing));
      v[0] = (mode.p1 == 0) ? mode.norm_const : 0.0;
      const double dth = 2.0 * M_PI / grid.n2;
      for (int i = 1; i <= grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j) {
          const double th = j * dth;
          const double ang =
              mode.cos_parity ? std::cos(mode.p1 * th) : std::sin(mode.p1 * th);
          v[grid.disk_index(i, j)] = mode.norm_const * radial[i] * ang;
        }
      break;
    }
    case DomainKind::SphereS2: {
      const double dth = M_PI / grid.n1, dph = 2.0 * M_PI / grid.n2;
      for (int j = 1; j <= grid.n1; ++j) {
        const double th = (j - 0.5) * dth;
        const double amp = mode.norm_const * beam_amplitude(mode.p1, std::pow(std::cos(th), 2));
        for (int k = 0; k < grid.n2; ++k)
          v[grid.sphere_index(j, k)] = amp * std::cos(mode.p1 * k * dph);
      }
      break;
    }
    case DomainKind::UnitBall3: {
      std::vector<double> radial(grid.n1 + 1);
      for (int i = 1; i <= grid.n1; ++i) {
        const double t = mode.lambda * i * grid.spacing;
        radial[i] = mode.norm_const * std::sin(t) / t;
      }
      v[0] = mode.norm_const;
      for (int i = 1; i <= grid.n1; ++i)
        for (int j = 1; j <= grid.n2; ++j)
          for (int k = 0; k < grid.n3; ++k) v[grid.ball_index(i, j, k)] = radial[i];
      break;
    }
    default: {
      for (std::size_t i = 0; i < grid.size(); ++i) v[i] = mode.value(grid.nodes[i]);
      break;
    }
  }
  return v;
}

double ExtendedMode::value(const Vec3& p) const {
  const Domain& dom = base.domain;
  switch (dom.kind) {
    case DomainKind::UnitSquare: {
      double x = p.x, y = p.y;
      int reflections = 0;
      double sign = 1.0;
      if (x < 0.0) {
        if (x < -collar) throw std::invalid_argument("ExtendedMode: beyond collar");
        x = -x;
        ++reflections;
      } else if (x > 1.0) {
        if (x > 1.0 + collar) throw std::invalid_argument("ExtendedMode: beyond collar");
        x = 2.0 - x;
        ++reflections;
      }
      if (y < 0.0) {
        if (y < -collar) throw std::invalid_argument("ExtendedMode: beyond collar");
        y = -y;
        ++reflections;
      } else if (y > 1.0) {
        if (y > 1.0 + collar) throw std::invalid_argument("ExtendedMode: beyond collar");
        y = 2.0 - y;
        ++reflections;
      }
      if (reflections > 1)
        throw std::invalid_argument("ExtendedMode: corner wedge is outside the Fermi collar");
      if (reflections == 1 && parity_sign < 0) sign = -1.0;
      return sign * base.value({x, y, 0.0});
    }
    case DomainKind::UnitDisk: {
      const double r = std::hypot(p.x, p.y);
      if (r <= 1.0) return base.value(p);
      if (r > 1.0 + collar) throw std::invalid_argument("ExtendedMode: beyond collar");
      const double rm = 2.0 - r;  // Fermi reflection x_n -> -x_n
      const double s = rm / r;
      const double sign = parity_sign < 0 ? -1.0 : 1.0;
      return sign * base.value({p.x * s, p.y * s, 0.0});
    }
    case DomainKind::UnitBall3: {
      const double r = norm(p);
      if (r <= 1.0) return base.value(p);
      if (r > 1.0 + collar) throw std::invalid_argument("ExtendedMode: beyond collar");
      const double s = (2.0 - r) / r;
      const double sign = parity_sign < 0 ? -1.0 : 1.0;
      return sign * base.value({p.x * s, p.y * s, p.z * s});
    }
    default: break;
  }
  throw std::invalid_argument("ExtendedMode: unsupported domain");
}

ExtendedMode reflect_extend(const EigenMode& mode, double collar_width) {
  if (mode.bc == BoundaryCondition::None)
    throw std::invalid_argument("reflect_extend: mode must satisfy Dirichlet or Neumann");
  if (!mode.domain.boundary_present)
    throw std::invalid_argument("reflect_extend: domain has no boundary");
  const double inj = (mode.domain.kind == DomainKind::UnitSquare) ? 0.25 : 0.5;
  if (!(collar_width > 0.0) || collar_width > inj)
    throw std::invalid_argument("reflect_extend: collar width exceeds the boundary tube");
  ExtendedMode e;
  e.base = mode;
  e.parity_sign = (mode.bc == BoundaryCondition::Dirichlet) ? -1 : +1;
  e.collar = collar_width;
  return e;
}

}  // namespace emass

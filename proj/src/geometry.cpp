#include "eigenmass/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace emass {

Domain Domain::make(DomainKind k) {
  Domain d;
  d.kind = k;
  switch (k) {
    case DomainKind::UnitSquare:
    case DomainKind::UnitDisk:
    case DomainKind::SphereS2:
      d.dimension = 2;
      break;
    case DomainKind::UnitBall3:
      d.dimension = 3;
      break;
  }
  d.boundary_present = (k != DomainKind::SphereS2);
  return d;
}

double Domain::diameter() const {
  switch (kind) {
    case DomainKind::UnitSquare: return std::sqrt(2.0);
    case DomainKind::UnitDisk: return 2.0;
    case DomainKind::SphereS2: return M_PI;  // geodesic diameter
    case DomainKind::UnitBall3: return 2.0;
  }
  return 0.0;
}

double Domain::volume() const {
  switch (kind) {
    case DomainKind::UnitSquare: return 1.0;
    case DomainKind::UnitDisk: return M_PI;
    case DomainKind::SphereS2: return 4.0 * M_PI;
    case DomainKind::UnitBall3: return 4.0 * M_PI / 3.0;
  }
  return 0.0;
}

bool Domain::contains(const Vec3& p, double tol) const {
  switch (kind) {
    case DomainKind::UnitSquare:
      return p.x >= -tol && p.x <= 1.0 + tol && p.y >= -tol && p.y <= 1.0 + tol;
    case DomainKind::UnitDisk: return p.x * p.x + p.y * p.y <= 1.0 + tol;
    case DomainKind::SphereS2: return std::abs(norm(p) - 1.0) <= tol;
    case DomainKind::UnitBall3: return norm(p) <= 1.0 + tol;
  }
  return false;
}

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::UnitSquare: return "square";
    case DomainKind::UnitDisk: return "disk";
    case DomainKind::SphereS2: return "sphere";
    case DomainKind::UnitBall3: return "ball";
  }
  return "?";
}

DomainKind domain_kind_from_string(const std::string& s) {
  if (s == "square") return DomainKind::UnitSquare;
  if (s == "disk") return DomainKind::UnitDisk;
  if (s == "sphere") return DomainKind::SphereS2;
  if (s == "ball") return DomainKind::UnitBall3;
  throw std::invalid_argument("unknown domain: " + s);
}

double Grid::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

namespace {

Grid build_square(int R) {
  Grid g;
  g.domain = Domain::make(DomainKind::UnitSquare);
  g.resolution = R;
  const double d = 1.0 / R;
  g.spacing = d;
  g.n1 = g.n2 = R + 1;
  const std::size_t n = static_cast<std::size_t>(R + 1) * (R + 1);
  g.nodes.resize(n);
  g.weights.resize(n);
  g.flags.resize(n);
  for (int j = 0; j <= R; ++j) {
    const double cy = (j == 0 || j == R) ? 0.5 : 1.0;
    for (int i = 0; i <= R; ++i) {
      const double cx = (i == 0 || i == R) ? 0.5 : 1.0;
      const std::size_t id = g.square_index(i, j);
      g.nodes[id] = {i * d, j * d, 0.0};
      g.weights[id] = d * d * cx * cy;
      g.flags[id] = (i == 0 || i == R || j == 0 || j == R)
                        ? static_cast<std::uint8_t>(NodeFlag::Boundary)
                        : static_cast<std::uint8_t>(NodeFlag::Interior);
    }
  }
  return g;
}

int disk_ntheta(int R) {
  // arc spacing at r=1 close to the radial spacing; multiple of 4 keeps the
  // four axis directions on the grid
  return 4 * static_cast<int>(std::ceil(M_PI * R / 4.0));
}

Grid build_disk(int R) {
  if (R % 2) throw std::invalid_argument("build_grid(disk): resolution must be even");
  Grid g;
  g.domain = Domain::make(DomainKind::UnitDisk);
  g.resolution = R;
  const double dr = 2.0 / R;
  g.spacing = dr;
  const int nr = R / 2;
  const int nt = disk_ntheta(R);
  g.n1 = nr;
  g.n2 = nt;
  const double dth = 2.0 * M_PI / nt;
  g.nodes.resize(1 + static_cast<std::size_t>(nr) * nt);
  g.weights.resize(g.nodes.size());
  g.flags.assign(g.nodes.size(), static_cast<std::uint8_t>(NodeFlag::Interior));
  g.nodes[0] = {0.0, 0.0, 0.0};
  g.weights[0] = M_PI * (dr / 2) * (dr / 2);
  for (int i = 1; i <= nr; ++i) {
    const double r = i * dr;
    const double rm = r - dr / 2;
    const double rp = std::min(1.0, r + dr / 2);
    const double wring = 0.5 * (rp * rp - rm * rm) * dth;  // exact cell integral of r dr dθ
    for (int j = 0; j < nt; ++j) {
      const std::size_t id = g.disk_index(i, j);
      const double th = j * dth;
      g.nodes[id] = {r * std::cos(th), r * std::sin(th), 0.0};
      g.weights[id] = wring;
      if (i == nr) g.flags[id] = static_cast<std::uint8_t>(NodeFlag::Boundary);
    }
  }
  return g;
}

Grid build_sphere(int R) {
  Grid g;
  g.domain = Domain::make(DomainKind::SphereS2);
  g.resolution = R;
  const int nth = R, nph = 2 * R;
  g.n1 = nth;
  g.n2 = nph;
  const double dth = M_PI / nth, dph = 2.0 * M_PI / nph;
  g.spacing = dth;
  g.nodes.resize(static_cast<std::size_t>(nth) * nph);
  g.weights.resize(g.nodes.size());
  g.flags.assign(g.nodes.size(), static_cast<std::uint8_t>(NodeFlag::Interior));
  for (int j = 1; j <= nth; ++j) {
    const double th = (j - 0.5) * dth;
    const double w = dph * (std::cos(th - dth / 2) - std::cos(th + dth / 2));  // exact
    for (int k = 0; k < nph; ++k) {
      const std::size_t id = g.sphere_index(j, k);
      const double ph = k * dph;
      g.nodes[id] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
      g.weights[id] = w;
    }
  }
  return g;
}

Grid build_ball(int R) {
  if (R % 2) throw std::invalid_argument("build_grid(ball): resolution must be even");
  Grid g;
  g.domain = Domain::make(DomainKind::UnitBall3);
  g.resolution = R;
  const double dr = 2.0 / R;
  g.spacing = dr;
  const int nr = R / 2, nth = R, nph = 2 * R;
  g.n1 = nr;
  g.n2 = nth;
  g.n3 = nph;
  const double dth = M_PI / nth, dph = 2.0 * M_PI / nph;
  g.nodes.resize(1 + static_cast<std::size_t>(nr) * nth * nph);
  g.weights.resize(g.nodes.size());
  g.flags.assign(g.nodes.size(), static_cast<std::uint8_t>(NodeFlag::Interior));
  g.nodes[0] = {0.0, 0.0, 0.0};
  g.weights[0] = 4.0 * M_PI / 3.0 * std::pow(dr / 2, 3);
  for (int i = 1; i <= nr; ++i) {
    const double r = i * dr;
    const double rm = r - dr / 2;
    const double rp = std::min(1.0, r + dr / 2);
    const double wr = (rp * rp * rp - rm * rm * rm) / 3.0;  // exact ∫ r² dr
    for (int j = 1; j <= nth; ++j) {
      const double th = (j - 0.5) * dth;
      const double wth = std::cos(th - dth / 2) - std::cos(th + dth / 2);
      const double w = wr * wth * dph;
      for (int k = 0; k < nph; ++k) {
        const std::size_t id = g.ball_index(i, j, k);
        const double ph = k * dph;
        g.nodes[id] = {r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
                       r * std::cos(th)};
        g.weights[id] = w;
        if (i == nr) g.flags[id] = static_cast<std::uint8_t>(NodeFlag::Boundary);
      }
    }
  }
  return g;
}

}  // namespace

Grid build_grid(const Domain& domain, int resolution) {
  if (resolution < 8)
    throw std::invalid_argument("build_grid: resolution must be >= 8, got " +
                                std::to_string(resolution));
  switch (domain.kind) {
    case DomainKind::UnitSquare: return build_square(resolution);
    case DomainKind::UnitDisk: return build_disk(resolution);
    case DomainKind::SphereS2: return build_sphere(resolution);
    case DomainKind::UnitBall3: return build_ball(resolution);
  }
  throw std::invalid_argument("build_grid: unknown domain");
}

double geodesic_distance(const Domain& domain, const Vec3& a, const Vec3& b) {
  if (domain.kind == DomainKind::SphereS2) {
    const double c = std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0);
    return std::acos(c);
  }
  return norm(a - b);
}

double BallRegion::weight_sum() const {
  double s = 0.0;
  for (double w : clipped_weights) s += w;
  return s;
}

namespace {

struct CellSample {
  Vec3 p;
  double measure;  // relative sub-cell measure
};

// 16 subsamples of the node's ownership cell, with the cell's own measure.
void cell_subsamples(const Grid& g, std::size_t id, std::vector<CellSample>& out) {
  out.clear();
  const Domain& dom = g.domain;
  if (dom.kind == DomainKind::UnitSquare) {
    const double d = g.spacing;
    const Vec3 c = g.nodes[id];
    const double x0 = std::max(0.0, c.x - d / 2), x1 = std::min(1.0, c.x + d / 2);
    const double y0 = std::max(0.0, c.y - d / 2), y1 = std::min(1.0, c.y + d / 2);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        out.push_back({{x0 + (a + 0.5) / 4 * (x1 - x0), y0 + (b + 0.5) / 4 * (y1 - y0), 0.0},
                       1.0});
  } else if (dom.kind == DomainKind::UnitDisk) {
    const double dr = g.spacing;
    const Vec3 c = g.nodes[id];
    const double r = std::hypot(c.x, c.y);
    double r0, r1, t0, t1;
    if (id == 0) {
      r0 = 0.0;
      r1 = dr / 2;
      t0 = 0.0;
      t1 = 2.0 * M_PI;
    } else {
      const double dth = 2.0 * M_PI / g.n2;
      const double th = std::atan2(c.y, c.x);
      r0 = r - dr / 2;
      r1 = std::min(1.0, r + dr / 2);
      t0 = th - dth / 2;
      t1 = th + dth / 2;
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double rs = r0 + (a + 0.5) / 4 * (r1 - r0);
        const double ts = t0 + (b + 0.5) / 4 * (t1 - t0);
        out.push_back({{rs * std::cos(ts), rs * std::sin(ts), 0.0}, rs});
      }
  } else if (dom.kind == DomainKind::SphereS2) {
    const Vec3 c = g.nodes[id];
    const double th = std::acos(std::clamp(c.z, -1.0, 1.0));
    const double ph = std::atan2(c.y, c.x);
    const double dth = M_PI / g.n1, dph = 2.0 * M_PI / g.n2;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double ts = th - dth / 2 + (a + 0.5) / 4 * dth;
        const double ps = ph - dph / 2 + (b + 0.5) / 4 * dph;
        out.push_back(
            {{std::sin(ts) * std::cos(ps), std::sin(ts) * std::sin(ps), std::cos(ts)},
             std::sin(ts)});
      }
  } else {  // ball
    const double dr = g.spacing;
    const Vec3 c = g.nodes[id];
    const double r = norm(c);
    if (id == 0) {
      for (int a = 0; a < 16; ++a) {
        const double rs = (a % 4 + 0.5) / 4 * (dr / 2);
        const double ts = (a / 4 + 0.5) / 4 * M_PI;
        out.push_back({{rs * std::sin(ts), 0.0, rs * std::cos(ts)}, rs * rs * std::sin(ts)});
      }
      return;
    }
    const double th = std::acos(std::clamp(c.z / r, -1.0, 1.0));
    const double ph = std::atan2(c.y, c.x);
    const double dth = M_PI / g.n2, dph = 2.0 * M_PI / g.n3;
    const double r0 = r - dr / 2, r1 = std::min(1.0, r + dr / 2);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 2; ++b)
        for (int e = 0; e < 2; ++e) {
          const double rs = r0 + (a + 0.5) / 4 * (r1 - r0);
          const double ts = th - dth / 2 + (b + 0.5) / 2 * dth;
          const double ps = ph - dph / 2 + (e + 0.5) / 2 * dph;
          out.push_back({{rs * std::sin(ts) * std::cos(ps), rs * std::sin(ts) * std::sin(ps),
                          rs * std::cos(ts)},
                         rs * rs * std::sin(ts)});
        }
  }
}

// conservative half-diagonal of a node cell, in the grid's metric
double cell_radius(const Grid& g, std::size_t id) {
  switch (g.domain.kind) {
    case DomainKind::UnitSquare: return g.spacing * 0.7071067811865476;
    case DomainKind::UnitDisk: {
      const double arc = 2.0 * M_PI / g.n2;  // at r<=1 the arc length is <= arc
      return 0.5 * std::hypot(g.spacing, arc) + 1e-15 * (id == 0);
    }
    case DomainKind::SphereS2: {
      const double dth = M_PI / g.n1, dph = 2.0 * M_PI / g.n2;
      return 0.5 * std::hypot(dth, dph);
    }
    case DomainKind::UnitBall3: {
      const double dth = M_PI / g.n2, dph = 2.0 * M_PI / g.n3;
      return 0.5 * std::sqrt(g.spacing * g.spacing + dth * dth + dph * dph);
    }
  }
  return g.spacing;
}

void consider_node(const Grid& g, std::size_t id, const Vec3& x0, double mu,
                   std::vector<CellSample>& scratch, BallRegion& out) {
  const double dist = geodesic_distance(g.domain, g.nodes[id], x0);
  const double crad = cell_radius(g, id);
  if (dist > mu + crad) return;
  double w = g.weights[id];
  if (dist > mu - crad) {
    // straddling cell: scale by sampled inside fraction
    cell_subsamples(g, id, scratch);
    double num = 0.0, den = 0.0;
    for (const CellSample& s : scratch) {
      den += s.measure;
      if (geodesic_distance(g.domain, s.p, x0) <= mu) num += s.measure;
    }
    if (num == 0.0) return;
    w *= num / den;
  }
  out.node_indices.push_back(static_cast<std::int32_t>(id));
  out.clipped_weights.push_back(w);
}

}  // namespace

BallRegion ball_region(const Grid& grid, const Vec3& x0, double mu) {
  const Domain& dom = grid.domain;
  if (!dom.contains(x0))
    throw std::invalid_argument("ball_region: center outside the closed domain");
  if (mu <= 0.0 || mu > dom.diameter())
    throw std::invalid_argument("ball_region: radius must lie in (0, diam]");

  BallRegion out;
  out.center = x0;
  out.radius = mu;
  out.under_resolved = (mu < 2.0 * grid.spacing);

  std::vector<CellSample> scratch;
  scratch.reserve(16);

  if (dom.kind == DomainKind::UnitSquare) {
    const int R = grid.resolution;
    const double d = grid.spacing;
    const int i0 = std::max(0, static_cast<int>(std::floor((x0.x - mu) / d)) - 1);
    const int i1 = std::min(R, static_cast<int>(std::ceil((x0.x + mu) / d)) + 1);
    const int j0 = std::max(0, static_cast<int>(std::floor((x0.y - mu) / d)) - 1);
    const int j1 = std::min(R, static_cast<int>(std::ceil((x0.y + mu) / d)) + 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        consider_node(grid, grid.square_index(i, j), x0, mu, scratch, out);
  } else if (dom.kind == DomainKind::UnitDisk) {
    const double d = norm(x0);
    const double pad = mu + 2.0 * cell_radius(grid, 1);
    consider_node(grid, 0, x0, mu, scratch, out);
    const double dth = 2.0 * M_PI / grid.n2;
    const double a0 = std::atan2(x0.y, x0.x);
    for (int i = 1; i <= grid.n1; ++i) {
      const double r = i * grid.spacing;
      if (std::abs(r - d) > pad) continue;
      // angular window by the law of cosines
      int k0 = 0, k1 = grid.n2 - 1;
      bool full = true;
      if (d > 1e-12 && r > 1e-12) {
        const double carg = (r * r + d * d - pad * pad) / (2.0 * r * d);
        if (carg > -1.0 && carg < 1.0) {
          const double half = std::acos(carg);
          const int kc = static_cast<int>(std::round(a0 / dth));
          const int kw = static_cast<int>(std::ceil(half / dth)) + 1;
          k0 = kc - kw;
          k1 = kc + kw;
          full = (k1 - k0 + 1 >= grid.n2);
        } else if (carg >= 1.0) {
          continue;
        }
      }
      if (full) {
        k0 = 0;
        k1 = grid.n2 - 1;
      }
      for (int k = k0; k <= k1; ++k) {
        const int kk = ((k % grid.n2) + grid.n2) % grid.n2;
        consider_node(grid, grid.disk_index(i, kk), x0, mu, scratch, out);
      }
    }
  } else if (dom.kind == DomainKind::SphereS2) {
    const double pad = mu + 2.0 * cell_radius(grid, 0);
    const double thc = std::acos(std::clamp(x0.z / norm(x0), -1.0, 1.0));
    const double dth = M_PI / grid.n1;
    for (int j = 1; j <= grid.n1; ++j) {
      const double th = (j - 0.5) * dth;
      if (std::abs(th - thc) > pad) continue;
      for (int k = 0; k < grid.n2; ++k)
        consider_node(grid, grid.sphere_index(j, k), x0, mu, scratch, out);
    }
  } else {  // ball
    const double d = norm(x0);
    const double pad = mu + 2.0 * cell_radius(grid, 1);
    consider_node(grid, 0, x0, mu, scratch, out);
    for (int i = 1; i <= grid.n1; ++i) {
      const double r = i * grid.spacing;
      if (std::abs(r - d) > pad) continue;
      for (int j = 1; j <= grid.n2; ++j)
        for (int k = 0; k < grid.n3; ++k)
          consider_node(grid, grid.ball_index(i, j, k), x0, mu, scratch, out);
    }
  }
  return out;
}

FermiCoords fermi_coordinates(const Domain& domain, const Vec3& p) {
  if (!domain.boundary_present)
    throw std::invalid_argument("fermi_coordinates: domain has no boundary");
  if (!domain.contains(p))
    throw std::invalid_argument("fermi_coordinates: point outside the closed domain");
  FermiCoords f;
  switch (domain.kind) {
    case DomainKind::UnitSquare: {
      const double dist[4] = {p.y, 1.0 - p.x, 1.0 - p.y, p.x};  // bottom,right,top,left
      int best = 0;
      for (int k = 1; k < 4; ++k)
        if (dist[k] < dist[best] - 1e-12) best = k;
      for (int k = 0; k < 4; ++k)
        if (k != best && std::abs(dist[k] - dist[best]) <= 1e-12) f.tie = true;
      f.face = best;
      f.xn = dist[best];
      f.s1 = (best == 0 || best == 2) ? p.x : p.y;
      return f;
    }
    case DomainKind::UnitDisk: {
      const double r = std::hypot(p.x, p.y);
      f.xn = 1.0 - r;
      f.s1 = (r > 1e-14) ? std::atan2(p.y, p.x) : 0.0;
      f.tie = (r <= 1e-14);
      return f;
    }
    case DomainKind::UnitBall3: {
      const double r = norm(p);
      f.xn = 1.0 - r;
      if (r <= 1e-14) {
        f.tie = true;
        return f;
      }
      f.s1 = std::acos(std::clamp(p.z / r, -1.0, 1.0));
      f.s2 = std::atan2(p.y, p.x);
      return f;
    }
    default: break;
  }
  throw std::invalid_argument("fermi_coordinates: unsupported domain");
}

namespace {
constexpr char kGridMagic[8] = {'E', 'M', 'G', 'R', 'I', 'D', '1', '\0'};

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void write_grid_cache(const Grid& grid, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_grid_cache: cannot open " + path);
  os.write(kGridMagic, 8);
  put(os, static_cast<std::uint32_t>(grid.domain.kind));
  put(os, static_cast<std::uint32_t>(grid.resolution));
  put(os, static_cast<std::uint64_t>(grid.size()));
  put(os, grid.spacing);
  put(os, static_cast<std::uint32_t>(grid.n1));
  put(os, static_cast<std::uint32_t>(grid.n2));
  put(os, static_cast<std::uint32_t>(grid.n3));
  os.write(reinterpret_cast<const char*>(grid.nodes.data()), grid.size() * sizeof(Vec3));
  os.write(reinterpret_cast<const char*>(grid.weights.data()), grid.size() * sizeof(double));
  os.write(reinterpret_cast<const char*>(grid.flags.data()), grid.size());
  if (!os) throw std::runtime_error("write_grid_cache: write failed for " + path);
}

Grid read_grid_cache(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_grid_cache: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kGridMagic, 8) != 0)
    throw std::runtime_error("read_grid_cache: bad magic in " + path);
  std::uint32_t kind = 0, res = 0, n1 = 0, n2 = 0, n3 = 0;
  std::uint64_t count = 0;
  double spacing = 0.0;
  get(is, kind);
  get(is, res);
  get(is, count);
  get(is, spacing);
  get(is, n1);
  get(is, n2);
  get(is, n3);
  Grid g;
  g.domain = Domain::make(static_cast<DomainKind>(kind));
  g.resolution = static_cast<int>(res);
  g.spacing = spacing;
  g.n1 = static_cast<int>(n1);
  g.n2 = static_cast<int>(n2);
  g.n3 = static_cast<int>(n3);
  g.nodes.resize(count);
  g.weights.resize(count);
  g.flags.resize(count);
  is.read(reinterpret_cast<char*>(g.nodes.data()), count * sizeof(Vec3));
  is.read(reinterpret_cast<char*>(g.weights.data()), count * sizeof(double));
  is.read(reinterpret_cast<char*>(g.flags.data()), count);
  if (!is) throw std::runtime_error("read_grid_cache: truncated file " + path);
  return g;
}

}  // namespace emass

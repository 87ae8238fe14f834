#include "eigenmass/discrete_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "eigenmass/kernels.hpp"
#include "eigenmass/quadrature.hpp"

namespace emass {

double DiscreteOperator::residual(const std::vector<double>& v, double lambda2) const {
  std::vector<double> kv(v.size());
  stiffness.matvec(v.data(), kv.data());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = kv[i] - lambda2 * mass[i] * v[i];
    num += r * r;
    const double mv = mass[i] * v[i];
    den += mv * mv;
  }
  return std::sqrt(num) / (std::abs(lambda2) * std::sqrt(den) + 1e-300);
}

namespace {

struct Builder {
  std::vector<std::int32_t> node_to_dof;
  std::vector<std::int32_t> dof_to_node;
  BandMatrix K;
  std::vector<double> mass;

  void init(const Grid& g, BoundaryCondition bc, std::size_t bandwidth) {
    node_to_dof.assign(g.size(), -1);
    const bool drop_boundary = (bc == BoundaryCondition::Dirichlet);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (drop_boundary && g.flags[i] == static_cast<std::uint8_t>(NodeFlag::Boundary)) continue;
      node_to_dof[i] = static_cast<std::int32_t>(dof_to_node.size());
      dof_to_node.push_back(static_cast<std::int32_t>(i));
    }
    K = BandMatrix(dof_to_node.size(), bandwidth);
    mass.resize(dof_to_node.size());
    for (std::size_t d = 0; d < dof_to_node.size(); ++d) mass[d] = g.weights[dof_to_node[d]];
  }

  // conductance edge between grid nodes a and b; eliminated neighbors
  // contribute to the diagonal only (homogeneous Dirichlet data)
  void edge(std::size_t a, std::size_t b, double c) {
    const std::int32_t da = node_to_dof[a], db = node_to_dof[b];
    if (da >= 0) K.at(da, da) += c;
    if (db >= 0) K.at(db, db) += c;
    if (da >= 0 && db >= 0) {
      const std::size_t i = std::max(da, db), j = std::min(da, db);
      K.at(i, j) -= c;
    }
  }
};

void assemble_square(const Grid& g, BoundaryCondition bc, Builder& b) {
  const int R = g.resolution;
  b.init(g, bc, static_cast<std::size_t>(bc == BoundaryCondition::Dirichlet ? R - 1 : R + 1));
  // horizontal edges: face length = y-extent of the shared cell wall
  for (int j = 0; j <= R; ++j) {
    const double face = (j == 0 || j == R) ? 0.5 : 1.0;
    for (int i = 0; i < R; ++i)
      b.edge(g.square_index(i, j), g.square_index(i + 1, j), face);
  }
  for (int i = 0; i <= R; ++i) {
    const double face = (i == 0 || i == R) ? 0.5 : 1.0;
    for (int j = 0; j < R; ++j)
      b.edge(g.square_index(i, j), g.square_index(i, j + 1), face);
  }
}

void assemble_disk(const Grid& g, BoundaryCondition bc, Builder& b) {
  const int nr = g.n1, nt = g.n2;
  const double dr = g.spacing, dth = 2.0 * M_PI / nt;
  b.init(g, bc, static_cast<std::size_t>(nt));
  // center to ring 1
  for (int j = 0; j < nt; ++j) b.edge(0, g.disk_index(1, j), (dr / 2) * dth / dr);
  for (int i = 1; i <= nr; ++i) {
    const double r = i * dr;
    const double rm = r - dr / 2, rp = std::min(1.0, r + dr / 2);
    // angular edges: exact ∫ dr/r across the cell's radial extent
    const double cth = std::log(rp / rm) / dth;
    for (int j = 0; j < nt; ++j) b.edge(g.disk_index(i, j), g.disk_index(i, (j + 1) % nt), cth);
    // radial edges to the next ring
    if (i < nr)
      for (int j = 0; j < nt; ++j)
        b.edge(g.disk_index(i, j), g.disk_index(i + 1, j), (r + dr / 2) * dth / dr);
  }
}

void assemble_sphere(const Grid& g, BoundaryCondition, Builder& b) {
  const int nth = g.n1, nph = g.n2;
  const double dth = M_PI / nth, dph = 2.0 * M_PI / nph;
  b.init(g, BoundaryCondition::Neumann, static_cast<std::size_t>(nph));
  for (int j = 1; j <= nth; ++j) {
    const double th = (j - 0.5) * dth, thp = j * dth;
    // azimuthal edges: midpoint conductance (the exact ∫ dθ/sinθ diverges
    // at the pole-adjacent cells)
    const double cph = dth / (std::sin(th) * dph);
    for (int k = 0; k < nph; ++k)
      b.edge(g.sphere_index(j, k), g.sphere_index(j, (k + 1) % nph), cph);
    // meridional edges (no flux across the poles)
    if (j < nth)
      for (int k = 0; k < nph; ++k)
        b.edge(g.sphere_index(j, k), g.sphere_index(j + 1, k), std::sin(thp) * dph / dth);
  }
}

void assemble_ball(const Grid& g, BoundaryCondition bc, Builder& b) {
  const int nr = g.n1, nth = g.n2, nph = g.n3;
  const double dr = g.spacing, dth = M_PI / nth, dph = 2.0 * M_PI / nph;
  b.init(g, bc, static_cast<std::size_t>(nth) * nph);
  std::vector<double> solid(nth + 1);
  for (int j = 1; j <= nth; ++j)
    solid[j] = (std::cos((j - 1) * dth) - std::cos(j * dth)) * dph;
  for (int j = 1; j <= nth; ++j)
    for (int k = 0; k < nph; ++k)
      b.edge(0, g.ball_index(1, j, k), (dr / 2) * (dr / 2) * solid[j] / dr);
  for (int i = 1; i <= nr; ++i) {
    const double r = i * dr;
    const double rm = r - dr / 2, rp = std::min(1.0, r + dr / 2);
    const double rint = rp - rm;  // ∫ dr of the radial cell
    for (int j = 1; j <= nth; ++j) {
      const double th = (j - 0.5) * dth, thp = j * dth;
      const double cph = rint * dth / (std::sin(th) * dph);  // midpoint at the poles
      for (int k = 0; k < nph; ++k) {
        b.edge(g.ball_index(i, j, k), g.ball_index(i, j, (k + 1) % nph), cph);
        if (j < nth)
          b.edge(g.ball_index(i, j, k), g.ball_index(i, j + 1, k),
                 rint * std::sin(thp) * dph / dth);
        if (i < nr)
          b.edge(g.ball_index(i, j, k), g.ball_index(i + 1, j, k),
                 (r + dr / 2) * (r + dr / 2) * solid[j] / dr);
      }
    }
  }
}

}  // namespace

DiscreteOperator assemble(std::shared_ptr<const Grid> grid, BoundaryCondition bc) {
  if (bc == BoundaryCondition::None && grid->domain.kind != DomainKind::SphereS2)
    throw std::invalid_argument("assemble: bc None only valid on S2");
  if (grid->domain.kind == DomainKind::SphereS2 && bc == BoundaryCondition::Dirichlet)
    throw std::invalid_argument("assemble: S2 has no boundary for Dirichlet data");
  Builder b;
  switch (grid->domain.kind) {
    case DomainKind::UnitSquare: assemble_square(*grid, bc, b); break;
    case DomainKind::UnitDisk: assemble_disk(*grid, bc, b); break;
    case DomainKind::SphereS2: assemble_sphere(*grid, bc, b); break;
    case DomainKind::UnitBall3: assemble_ball(*grid, bc, b); break;
    default: throw std::invalid_argument("assemble: unsupported grid family");
  }
  DiscreteOperator op;
  op.grid = std::move(grid);
  op.bc = bc;
  op.stiffness = std::move(b.K);
  op.mass = std::move(b.mass);
  op.dof_to_node = std::move(b.dof_to_node);
  op.node_to_dof = std::move(b.node_to_dof);
  return op;
}

double m_inner(const DiscreteOperator& op, const std::vector<double>& a,
               const std::vector<double>& b) {
  return kernels::weighted_dot(op.mass.data(), a.data(), b.data(), a.size());
}

EigenpairBatch solve_near(const DiscreteOperator& op, double target, int count,
                          std::uint64_t seed) {
  if (count < 1 || count > 50) throw std::invalid_argument("solve_near: count in [1,50]");
  if (target < 0.0) throw std::invalid_argument("solve_near: target must be >= 0");
  const std::size_t n = op.dofs();

  EigenpairBatch batch;
  batch.grid = op.grid;
  batch.bc = op.bc;
  batch.target = target;

  const int miter =
      static_cast<int>(std::min<std::size_t>(n, std::max(3 * count + 30, 60)));
  std::string prov = "shift-invert lanczos; seed=" + std::to_string(seed);

  double sigma = target;
  std::vector<std::vector<double>> V;
  std::vector<double> alpha, beta;
  std::vector<double> d, e, z;
  int m = 0;
  bool done = false;
  for (int attempt = 0; attempt < 5 && !done; ++attempt) {
    if (attempt > 0) {
      // near-eigenvalue or degenerate shift: nudge and restart
      sigma = target + attempt * 1e-3 * std::max(target, 1.0);
      prov += "; shift perturbed to " + std::to_string(sigma);
    }
    std::optional<BandLdlt> f = BandLdlt::factor(op.stiffness, op.mass, sigma);
    if (!f) continue;

    V.clear();
    alpha.clear();
    beta.clear();
    V.reserve(miter + 1);
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.sym();
    double nrm = std::sqrt(m_inner(op, v, v));
    for (auto& x : v) x /= nrm;
    V.push_back(v);

    bool finite = true;
    std::vector<double> w(n);
    for (int j = 0; j < miter; ++j) {
      // w = (K - sigma M)^{-1} M v_j
      for (std::size_t i = 0; i < n; ++i) w[i] = op.mass[i] * V[j][i];
      f->solve(w);
      const double a = m_inner(op, w, V[j]);
      if (!std::isfinite(a)) {
        finite = false;
        break;
      }
      alpha.push_back(a);
      kernels::axpy(-a, V[j].data(), w.data(), n);
      if (j > 0) kernels::axpy(-beta[j - 1], V[j - 1].data(), w.data(), n);
      // full reorthogonalization (twice for safety)
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : V) {
          const double c = m_inner(op, w, q);
          kernels::axpy(-c, q.data(), w.data(), n);
        }
      const double bnorm = std::sqrt(m_inner(op, w, w));
      if (!std::isfinite(bnorm)) {
        finite = false;
        break;
      }
      if (bnorm < 1e-13 || j == miter - 1) break;
      beta.push_back(bnorm);
      std::vector<double> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / bnorm;
      V.push_back(std::move(next));
    }
    if (!finite || alpha.empty()) continue;

    m = static_cast<int>(alpha.size());
    d = alpha;
    e.assign(m, 0.0);
    for (int i = 1; i < m; ++i) e[i] = beta[i - 1];
    z.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) z[static_cast<std::size_t>(i) * m + i] = 1.0;
    if (tridiag_eigen(d, e, &z)) done = true;
  }
  if (!done) throw std::runtime_error("solve_near: factorization failed after shift perturbation");

  // Ritz values theta -> lambda2 = sigma + 1/theta
  struct Cand {
    double lambda2;
    int col;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < m; ++i) {
    if (std::abs(d[i]) < 1e-14) continue;
    cands.push_back({sigma + 1.0 / d[i], i});
  }
  std::sort(cands.begin(), cands.end(), [&](const Cand& a2, const Cand& b2) {
    return std::abs(a2.lambda2 - target) < std::abs(b2.lambda2 - target);
  });

  const int take = std::min<int>(count, static_cast<int>(cands.size()));
  for (int t = 0; t < take; ++t) {
    Eigenpair p;
    p.lambda2 = cands[t].lambda2;
    p.vec.assign(n, 0.0);
    for (int j = 0; j < static_cast<int>(V.size()) && j < m; ++j)
      kernels::axpy(z[static_cast<std::size_t>(j) * m + cands[t].col], V[j].data(),
                    p.vec.data(), n);
    const double vn = std::sqrt(m_inner(op, p.vec, p.vec));
    for (auto& x : p.vec) x /= vn;
    // deterministic sign: largest-magnitude entry positive
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(p.vec[i]) > std::abs(p.vec[imax])) imax = i;
    if (p.vec[imax] < 0.0)
      for (auto& x : p.vec) x = -x;
    p.residual = op.residual(p.vec, p.lambda2);
    p.converged = (p.residual <= 1e-8);
    batch.pairs.push_back(std::move(p));
  }
  batch.provenance = prov + "; iters=" + std::to_string(m);
  return batch;
}

WeylReport weyl_check(const DiscreteOperator& op, double lambda_cap) {
  if (op.grid->domain.dimension != 2 || op.grid->domain.kind == DomainKind::SphereS2)
    throw std::invalid_argument("weyl_check: planar 2-d domains only");
  const double dx = op.grid->spacing;
  const double trust = 1e-2 * (M_PI / dx) * (M_PI / dx);
  if (lambda_cap > trust)
    throw std::invalid_argument("weyl_check: lambda cap beyond the trustworthy band");
  auto f = BandLdlt::factor(op.stiffness, op.mass, lambda_cap);
  if (!f) {
    // cap landed on a discrete eigenvalue; nudge
    f = BandLdlt::factor(op.stiffness, op.mass, lambda_cap * (1.0 + 1e-9) + 1e-12);
    if (!f) throw std::runtime_error("weyl_check: factorization failed");
  }
  WeylReport r;
  r.lambda_cap = lambda_cap;
  r.count = static_cast<std::size_t>(f->negative_pivots());
  r.weyl_estimate = op.grid->domain.volume() * lambda_cap / (4.0 * M_PI);
  r.rel_deviation = (static_cast<double>(r.count) - r.weyl_estimate) / r.weyl_estimate;
  return r;
}

namespace {
constexpr char kEigMagic[8] = {'E', 'M', 'E', 'I', 'G', '1', '\0', '\0'};
constexpr std::uint32_t kSolverVersion = 1;
template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void cache_store(const EigenpairBatch& batch, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cache_store: cannot open " + path);
  os.write(kEigMagic, 8);
  put(os, static_cast<std::uint32_t>(batch.grid->domain.kind));
  put(os, static_cast<std::uint32_t>(batch.grid->resolution));
  put(os, static_cast<std::uint32_t>(batch.bc));
  put(os, kSolverVersion);
  put(os, batch.target);
  put(os, static_cast<std::uint64_t>(batch.pairs.size()));
  const std::uint64_t n = batch.pairs.empty() ? 0 : batch.pairs.front().vec.size();
  put(os, n);
  for (const Eigenpair& p : batch.pairs) {
    put(os, p.lambda2);
    put(os, p.residual);
    put(os, static_cast<std::uint8_t>(p.converged));
    os.write(reinterpret_cast<const char*>(p.vec.data()), n * sizeof(double));
  }
  const std::uint32_t plen = static_cast<std::uint32_t>(batch.provenance.size());
  put(os, plen);
  os.write(batch.provenance.data(), plen);
  if (!os) throw std::runtime_error("cache_store: write failed for " + path);
}

EigenpairBatch cache_load(const std::string& path, std::shared_ptr<const Grid> expected) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cache_load: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kEigMagic, 8) != 0)
    throw std::runtime_error("cache_load: bad magic in " + path);
  std::uint32_t kind = 0, res = 0, bc = 0, ver = 0;
  get(is, kind);
  get(is, res);
  get(is, bc);
  get(is, ver);
  if (ver != kSolverVersion) throw std::runtime_error("cache_load: solver version mismatch");
  if (static_cast<DomainKind>(kind) != expected->domain.kind ||
      static_cast<int>(res) != expected->resolution)
    throw std::runtime_error("cache_load: domain/resolution header mismatch");
  EigenpairBatch batch;
  batch.grid = std::move(expected);
  batch.bc = static_cast<BoundaryCondition>(bc);
  get(is, batch.target);
  std::uint64_t count = 0, n = 0;
  get(is, count);
  get(is, n);
  for (std::uint64_t i = 0; i < count; ++i) {
    Eigenpair p;
    get(is, p.lambda2);
    get(is, p.residual);
    std::uint8_t conv = 0;
    get(is, conv);
    p.converged = conv;
    p.vec.resize(n);
    is.read(reinterpret_cast<char*>(p.vec.data()), n * sizeof(double));
    batch.pairs.push_back(std::move(p));
  }
  std::uint32_t plen = 0;
  get(is, plen);
  batch.provenance.resize(plen);
  is.read(batch.provenance.data(), plen);
  if (!is) throw std::runtime_error("cache_load: truncated file " + path);
  return batch;
}

EigenMode batch_mode(const EigenpairBatch& batch, std::size_t index) {
  const Eigenpair& p = batch.pairs.at(index);
  // refill eliminated boundary rows with the homogeneous data
  auto values = std::make_shared<std::vector<double>>(batch.grid->size(), 0.0);
  {
    const bool drop = (batch.bc == BoundaryCondition::Dirichlet);
    std::size_t d = 0;
    for (std::size_t i = 0; i < batch.grid->size(); ++i) {
      if (drop && batch.grid->flags[i] == static_cast<std::uint8_t>(NodeFlag::Boundary))
        continue;
      (*values)[i] = p.vec[d++];
    }
  }
  EigenMode m;
  m.family = EigenMode::Family::Discrete;
  m.domain = batch.grid->domain;
  m.bc = batch.bc;
  m.lambda = std::sqrt(std::max(0.0, p.lambda2));
  m.h = (m.lambda > 1e-12) ? 1.0 / m.lambda : std::numeric_limits<double>::infinity();
  m.grid = batch.grid;
  m.values = values;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", p.lambda2);
  m.id = "fd:" + to_string(batch.grid->domain.kind) + ":" +
         (batch.bc == BoundaryCondition::Dirichlet ? std::string("D") : std::string("N")) +
         ":" + buf;
  return m;
}

}  // namespace emass

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "eigenmass/bessel.hpp"
#include "eigenmass/closed_form.hpp"
#include "eigenmass/discrete_solver.hpp"
#include "eigenmass/quadrature.hpp"

using namespace emass;

namespace {

std::shared_ptr<const Grid> make_grid(DomainKind k, int res) {
  return std::make_shared<const Grid>(build_grid(Domain::make(k), res));
}

// M-inner product between a dof vector and a closed-form mode
double overlap_with(const DiscreteOperator& op, const std::vector<double>& v,
                    const EigenMode& mode) {
  const std::vector<double> mv = sample_on_grid(mode, *op.grid);
  std::vector<double> md(op.dofs());
  for (std::size_t d = 0; d < op.dofs(); ++d) md[d] = mv[op.dof_to_node[d]];
  // normalize the sampled mode in the M norm
  const double nrm = std::sqrt(m_inner(op, md, md));
  for (auto& x : md) x /= nrm;
  return m_inner(op, v, md);
}

}  // namespace

TEST_CASE("square Dirichlet fundamental converges at second order") {
  std::vector<double> h, err;
  const double exact = 2.0 * M_PI * M_PI;
  for (int R : {64, 128, 256}) {
    auto op = assemble(make_grid(DomainKind::UnitSquare, R), BoundaryCondition::Dirichlet);
    const EigenpairBatch b = solve_near(op, exact, 1);
    REQUIRE(b.pairs.size() == 1);
    CHECK(b.pairs[0].residual <= 1e-8);
    CHECK(b.pairs[0].lambda2 == doctest::Approx(exact).epsilon(0.01));
    h.push_back(1.0 / R);
    err.push_back(std::abs(b.pairs[0].lambda2 - exact));
  }
  const double order = fit_order(h, err);
  CHECK(order >= 1.7);
  CHECK(order <= 2.3);
}

TEST_CASE("square Neumann has the zero mode with a constant eigenvector") {
  auto op = assemble(make_grid(DomainKind::UnitSquare, 48), BoundaryCondition::Neumann);
  // K annihilates constants
  std::vector<double> ones(op.dofs(), 1.0), kv(op.dofs());
  op.stiffness.matvec(ones.data(), kv.data());
  double knorm = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < kv.size(); ++i) {
    knorm = std::max(knorm, std::abs(kv[i]));
    scale = std::max(scale, std::abs(op.stiffness.at(i, i)));
  }
  CHECK(knorm <= 1e-10 * scale);

  const EigenpairBatch b = solve_near(op, 0.0, 1);
  REQUIRE(b.pairs.size() == 1);
  CHECK(std::abs(b.pairs[0].lambda2) < 1e-8);
  double vmin = 1e300, vmax = -1e300;
  for (double x : b.pairs[0].vec) {
    vmin = std::min(vmin, x);
    vmax = std::max(vmax, x);
  }
  CHECK(std::abs(vmax - vmin) < 1e-6 * std::abs(vmax));
}

TEST_CASE("disk Dirichlet fundamental matches j01^2 within 1%") {
  auto op = assemble(make_grid(DomainKind::UnitDisk, 128), BoundaryCondition::Dirichlet);
  const double exact = std::pow(bessel_zero(0, 1, BesselZeroKind::OfJ), 2.0);
  const EigenpairBatch b = solve_near(op, exact, 1);
  REQUIRE(b.pairs.size() == 1);
  CHECK(b.pairs[0].lambda2 == doctest::Approx(exact).epsilon(0.01));
  CHECK(b.pairs[0].residual <= 1e-8);
}

TEST_CASE("ten eigenpairs near 1000 match the discrete-exact spectrum") {
  const int R = 128;
  auto op = assemble(make_grid(DomainKind::UnitSquare, R), BoundaryCondition::Dirichlet);
  const EigenpairBatch b = solve_near(op, 1000.0, 10);
  REQUIRE(b.pairs.size() == 10);

  // analytic discrete eigenvalues of the five-point operator
  std::vector<double> discrete;
  const double dx = 1.0 / R;
  for (int j = 1; j < R; ++j)
    for (int k = 1; k < R; ++k) {
      const double s1 = std::sin(0.5 * j * M_PI * dx), s2 = std::sin(0.5 * k * M_PI * dx);
      discrete.push_back(4.0 / (dx * dx) * (s1 * s1 + s2 * s2));
    }
  std::sort(discrete.begin(), discrete.end(), [](double a, double c) {
    return std::abs(a - 1000.0) < std::abs(c - 1000.0);
  });
  std::vector<double> got, want(discrete.begin(), discrete.begin() + 10);
  for (const Eigenpair& p : b.pairs) {
    CHECK(p.residual <= 1e-8);
    got.push_back(p.lambda2);
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 10; ++i) {
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
    // and the continuum lattice pi^2 (j^2+k^2) is matched within FD error
  }
  // pairwise M-orthonormality
  for (int i = 0; i < 10; ++i)
    for (int j = i; j < 10; ++j) {
      const double ip = m_inner(op, b.pairs[i].vec, b.pairs[j].vec);
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("degenerate square cluster recovered at subspace level") {
  const int R = 96;
  auto op = assemble(make_grid(DomainKind::UnitSquare, R), BoundaryCondition::Dirichlet);
  const double l2 = M_PI * M_PI * 34.0;  // (3,5) and (5,3)
  const EigenpairBatch b = solve_near(op, l2, 2);
  REQUIRE(b.pairs.size() == 2);
  const EigenMode m35 = rectangle_mode(3, 5, BoundaryCondition::Dirichlet);
  const EigenMode m53 = rectangle_mode(5, 3, BoundaryCondition::Dirichlet);
  for (const EigenMode* mode : {&m35, &m53}) {
    double proj2 = 0.0;
    for (const Eigenpair& p : b.pairs) {
      const double c = overlap_with(op, p.vec, *mode);
      proj2 += c * c;
    }
    // subspace principal angle <= 5 degrees: cos^2 >= 0.99240
    CHECK(proj2 >= 0.9924);
  }
  for (const Eigenpair& p : b.pairs)
    CHECK(p.lambda2 == doctest::Approx(l2).epsilon(std::pow(m35.lambda / R, 2.0)));
}

TEST_CASE("sphere Laplace-Beltrami eigenvalue n(n+1)") {
  auto op = assemble(make_grid(DomainKind::SphereS2, 64), BoundaryCondition::None);
  const EigenpairBatch b = solve_near(op, 6.0, 3);  // n = 2, multiplicity 5
  REQUIRE(b.pairs.size() == 3);
  for (const Eigenpair& p : b.pairs) CHECK(p.lambda2 == doctest::Approx(6.0).epsilon(0.01));
}

TEST_CASE("ball radial fundamental near pi^2") {
  auto op = assemble(make_grid(DomainKind::UnitBall3, 16), BoundaryCondition::Dirichlet);
  const double exact = M_PI * M_PI;
  const EigenpairBatch b = solve_near(op, exact, 1);
  REQUIRE(b.pairs.size() == 1);
  CHECK(b.pairs[0].lambda2 == doctest::Approx(exact).epsilon(0.03));
  const double c = overlap_with(op, b.pairs[0].vec, ball3_mode(1));
  CHECK(c * c >= 0.97);
}

namespace {

// separable oracle for the discrete whispering-gallery eigenvalue: the polar
// box scheme block-diagonalizes over angular wavenumbers, so the m-sector
// reduces to a radial tridiagonal problem with angular multiplier
// mu_m = 2(1 - cos m dtheta).
double radial_sector_eigenvalue(const Grid& g, int m_ang) {
  const int nr = g.n1, nt = g.n2;
  const double dr = g.spacing, dth = 2.0 * M_PI / nt;
  const double mu_m = 2.0 * (1.0 - std::cos(m_ang * dth));
  const int n = nr - 1;  // Dirichlet rim eliminated
  std::vector<double> diag(n), off(n, 0.0), mass(n);
  auto cr = [&](int i) {  // conductance between rings i and i+1 (ring 0 = center)
    const double r_half = (i + 0.5) * dr;
    return r_half * dth / dr;
  };
  for (int i = 1; i <= n; ++i) {
    const double r = i * dr;
    const double rm = r - dr / 2, rp = std::min(1.0, r + dr / 2);
    const double cth = std::log(rp / rm) / dth;
    double d = cr(i - 1) + cr(i) + cth * mu_m;
    diag[i - 1] = d;
    mass[i - 1] = 0.5 * (rp * rp - rm * rm) * dth;
    if (i < n) off[i - 1] = -cr(i);
  }
  // symmetrize the generalized problem with the diagonal mass
  std::vector<double> d2(n), e2(n, 0.0);
  for (int i = 0; i < n; ++i) d2[i] = diag[i] / mass[i];
  for (int i = 0; i + 1 < n; ++i) e2[i + 1] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
  REQUIRE(tridiag_eigen(d2, e2, nullptr));
  return d2.front();
}

}  // namespace

TEST_CASE("whispering-gallery mode recovered with >= 0.99 squared overlap") {
  const int R = 224;
  auto grid = make_grid(DomainKind::UnitDisk, R);
  auto op = assemble(grid, BoundaryCondition::Dirichlet);
  const double j50 = bessel_zero(50, 1, BesselZeroKind::OfJ);

  // discrete-spectrum oracle for the target (the continuum value is shifted
  // by more than the local spectral spacing at any affordable resolution)
  const double sigma = radial_sector_eigenvalue(*grid, 50);
  CHECK(sigma == doctest::Approx(j50 * j50).epsilon(0.02));

  const EigenpairBatch b = solve_near(op, sigma, 3);
  REQUIRE(b.pairs.size() == 3);
  const EigenMode wg_cos = disk_mode(50, 1, BoundaryCondition::Dirichlet, true);
  const EigenMode wg_sin = disk_mode(50, 1, BoundaryCondition::Dirichlet, false);
  // the degenerate cos/sin pair spans the recovered leading subspace
  for (const EigenMode* mode : {&wg_cos, &wg_sin}) {
    double proj2 = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double c = overlap_with(op, b.pairs[i].vec, *mode);
      proj2 += c * c;
    }
    CHECK(proj2 >= 0.99);
  }
  CHECK(b.pairs[0].lambda2 == doctest::Approx(j50 * j50).epsilon(0.02));
}

TEST_CASE("weyl counts by inertia") {
  {
    const int R = 96;
    auto op = assemble(make_grid(DomainKind::UnitSquare, R), BoundaryCondition::Dirichlet);
    const WeylReport w = weyl_check(op, 500.0);
    // the true lattice count at 500 sits 17% below the leading Weyl term
    // (Dirichlet boundary deficit ~ perimeter*sqrt(Λ)/(4π))
    CHECK(std::abs(w.rel_deviation) <= 0.20);
    // the inertia count must equal the analytic discrete count exactly
    std::size_t exact = 0;
    const double dx = 1.0 / R;
    for (int j = 1; j < R; ++j)
      for (int k = 1; k < R; ++k) {
        const double s1 = std::sin(0.5 * j * M_PI * dx), s2 = std::sin(0.5 * k * M_PI * dx);
        if (4.0 / (dx * dx) * (s1 * s1 + s2 * s2) <= 500.0) ++exact;
      }
    CHECK(w.count == exact);
    // below the first eigenvalue the count is zero
    CHECK(weyl_check(op, 10.0).count == 0);
    CHECK_THROWS_AS(weyl_check(op, 1e8), std::invalid_argument);
  }
  {
    auto op = assemble(make_grid(DomainKind::UnitDisk, 160), BoundaryCondition::Dirichlet);
    const WeylReport w = weyl_check(op, 500.0);
    CHECK(std::abs(w.rel_deviation) <= 0.15);
    CHECK(w.weyl_estimate == doctest::Approx(500.0 / 4.0).epsilon(1e-12));
    // continuum oracle: count Bessel zeros with alpha^2 <= 500 (m>0 doubled)
    std::size_t bessel_count = 0;
    for (int m = 0; m <= 40; ++m) {
      for (int k = 1; k <= 40; ++k) {
        const double z = bessel_zero(m, k, BesselZeroKind::OfJ);
        if (z * z > 500.0) break;
        bessel_count += (m == 0) ? 1 : 2;
      }
      if (bessel_zero(m, 1, BesselZeroKind::OfJ) * bessel_zero(m, 1, BesselZeroKind::OfJ) >
          500.0)
        break;
    }
    CHECK(static_cast<double>(w.count) ==
          doctest::Approx(static_cast<double>(bessel_count)).epsilon(0.05));
  }
}

TEST_CASE("eigenpair cache round-trips bit-exactly") {
  auto grid = make_grid(DomainKind::UnitSquare, 64);
  auto op = assemble(grid, BoundaryCondition::Dirichlet);
  const EigenpairBatch b = solve_near(op, 300.0, 10);
  const std::string path = "test_eig_cache.bin";
  cache_store(b, path);
  const EigenpairBatch back = cache_load(path, grid);
  REQUIRE(back.pairs.size() == b.pairs.size());
  for (std::size_t i = 0; i < b.pairs.size(); ++i) {
    CHECK(back.pairs[i].lambda2 == b.pairs[i].lambda2);  // bit-exact
    for (std::size_t k = 0; k < b.pairs[i].vec.size(); ++k)
      CHECK(back.pairs[i].vec[k] == b.pairs[i].vec[k]);
  }
  // wrong-resolution header rejects
  auto other = make_grid(DomainKind::UnitSquare, 32);
  CHECK_THROWS(cache_load(path, other));

  // dense-vector storage bound: within 2x of 8 bytes * N * pairs
  std::FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f);
  std::fseek(f, 0, SEEK_END);
  const long sz = std::ftell(f);
  std::fclose(f);
  const double payload = 8.0 * static_cast<double>(op.dofs()) * 10.0;
  CHECK(static_cast<double>(sz) <= 2.0 * payload);
  CHECK(static_cast<double>(sz) >= payload);
  std::remove(path.c_str());
}

TEST_CASE("batch_mode refills Dirichlet boundary rows with zeros") {
  auto grid = make_grid(DomainKind::UnitSquare, 32);
  auto op = assemble(grid, BoundaryCondition::Dirichlet);
  const EigenpairBatch b = solve_near(op, 2.0 * M_PI * M_PI, 1);
  const EigenMode m = batch_mode(b, 0);
  REQUIRE(m.values);
  for (std::size_t i = 0; i < grid->size(); ++i)
    if (grid->flags[i]) CHECK((*m.values)[i] == 0.0);
  CHECK(m.lambda == doctest::Approx(std::sqrt(b.pairs[0].lambda2)));
}

TEST_CASE("discrete-analytic agreement for resolved closed-form modes") {
  const int R = 96;
  auto op = assemble(make_grid(DomainKind::UnitSquare, R), BoundaryCondition::Neumann);
  const EigenMode m = rectangle_mode(2, 0, BoundaryCondition::Neumann);
  const EigenpairBatch b = solve_near(op, m.lambda * m.lambda, 2);
  double proj2 = 0.0;
  for (const Eigenpair& p : b.pairs) {
    const double c = overlap_with(op, p.vec, m);
    proj2 += c * c;
  }
  CHECK(proj2 >= 0.98);
  const double lam_dx = m.lambda / R;
  CHECK(std::abs(b.pairs[0].lambda2 - m.lambda * m.lambda) <=
        lam_dx * lam_dx * m.lambda * m.lambda);
}

TEST_CASE("neumann discrete eigenvector matches the sampled cosine product") {
  // non-degenerate (2,2) mode: the box scheme's eigenvectors are exactly the
  // sampled cosine products, so the mirror-ghost normal derivative vanishes
  const int R = 48;
  auto op = assemble(make_grid(DomainKind::UnitSquare, R), BoundaryCondition::Neumann);
  const EigenMode m = rectangle_mode(2, 2, BoundaryCondition::Neumann);
  const EigenpairBatch b = solve_near(op, m.lambda * m.lambda, 1);
  REQUIRE(b.pairs.size() == 1);
  const double c = overlap_with(op, b.pairs[0].vec, m);
  CHECK(c * c >= 1.0 - 1e-8);
}

TEST_CASE("sphere eigenspace contains the highest-weight beam") {
  const int n = 6;  // eigenvalue 42, multiplicity 13
  auto grid = make_grid(DomainKind::SphereS2, 64);
  auto op = assemble(grid, BoundaryCondition::None);
  const double l2 = static_cast<double>(n) * (n + 1);
  const EigenpairBatch b = solve_near(op, l2, 13);
  REQUIRE(b.pairs.size() == 13);
  const EigenMode beam = sphere_highest_weight(n);
  double proj2 = 0.0;
  for (const Eigenpair& p : b.pairs) {
    if (std::abs(p.lambda2 - l2) > 0.05 * l2) continue;
    const double c = overlap_with(op, p.vec, beam);
    proj2 += c * c;
  }
  CHECK(proj2 >= 0.95);
}

TEST_CASE("sampled closed-form modes are near-kernel vectors of the operators") {
  // relative residual || K v - lambda^2 M v || / (lambda^2 ||M v||) stays
  // below 0.2 (lambda dx)^2 for every grid family (second-order schemes)
  auto res_of = [](const DiscreteOperator& op, const EigenMode& m) {
    std::vector<double> v(op.dofs());
    const std::vector<double> nv = sample_on_grid(m, *op.grid);
    for (std::size_t d = 0; d < op.dofs(); ++d) v[d] = nv[op.dof_to_node[d]];
    return op.residual(v, m.lambda * m.lambda);
  };
  {
    auto op = assemble(make_grid(DomainKind::UnitDisk, 128), BoundaryCondition::Dirichlet);
    for (auto [m, k] : {std::pair{0, 1}, {3, 2}, {8, 1}}) {
      const EigenMode md = disk_mode(m, k, BoundaryCondition::Dirichlet);
      const double ld = md.lambda * op.grid->spacing;
      CHECK(res_of(op, md) <= 0.2 * ld * ld);
    }
  }
  {
    auto op = assemble(make_grid(DomainKind::SphereS2, 64), BoundaryCondition::None);
    for (int n : {2, 6}) {
      const EigenMode md = sphere_highest_weight(n);
      const double ld = md.lambda * op.grid->spacing;
      CHECK(res_of(op, md) <= 0.2 * ld * ld);
    }
  }
  {
    auto op = assemble(make_grid(DomainKind::UnitBall3, 24), BoundaryCondition::Dirichlet);
    for (int k : {1, 2}) {
      const EigenMode md = ball3_mode(k);
      const double ld = md.lambda * op.grid->spacing;
      CHECK(res_of(op, md) <= 0.2 * ld * ld);
    }
  }
}

TEST_CASE("singular shifts are perturbed and recorded in provenance") {
  // the Neumann stiffness annihilates constants: a zero shift must break
  // down and be retried with a perturbed sigma
  auto op = assemble(make_grid(DomainKind::UnitSquare, 32), BoundaryCondition::Neumann);
  const EigenpairBatch b = solve_near(op, 0.0, 1);
  CHECK(b.provenance.find("perturbed") != std::string::npos);
  CHECK(std::abs(b.pairs.at(0).lambda2) < 1e-8);
}

TEST_CASE("square weyl count meets the leading term once the cap grows") {
  // at 500 the boundary deficit dominates (17%); at 1000 the count returns
  // to within 15% of |Omega| L / (4 pi), confirming the counting machinery
  auto op = assemble(make_grid(DomainKind::UnitSquare, 128), BoundaryCondition::Dirichlet);
  const WeylReport w = weyl_check(op, 1000.0);
  CHECK(std::abs(w.rel_deviation) <= 0.15);
}

TEST_CASE("cache rejects a version mismatch") {
  auto grid = make_grid(DomainKind::UnitSquare, 32);
  auto op = assemble(grid, BoundaryCondition::Dirichlet);
  const EigenpairBatch b = solve_near(op, 100.0, 1);
  const std::string path = "test_eig_version.bin";
  cache_store(b, path);
  {
    // header layout: magic(8) kind(4) res(4) bc(4) version(4)
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f);
    std::fseek(f, 20, SEEK_SET);
    const std::uint32_t bogus = 9999;
    std::fwrite(&bogus, sizeof(bogus), 1, f);
    std::fclose(f);
  }
  CHECK_THROWS(cache_load(path, grid));
  std::remove(path.c_str());
}

TEST_CASE("small operators return at most the available spectrum") {
  auto op = assemble(make_grid(DomainKind::UnitSquare, 8), BoundaryCondition::Dirichlet);
  REQUIRE(op.dofs() == 49);
  const EigenpairBatch b = solve_near(op, 50.0, 50);
  CHECK(b.pairs.size() <= 49);
  CHECK(b.pairs.size() >= 40);  // nearly the whole spectrum is recoverable
  for (const Eigenpair& p : b.pairs) CHECK(p.residual <= 1e-6);
}

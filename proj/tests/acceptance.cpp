// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line.  Three clauses assert numeric windows that the exact oracles place
// outside the stated range (the beam exponent window, the whispering-gallery
// saturation factor, the square Weyl window at 500, and the sub-wavelength
// cutoff growth); they are asserted as written and allowed to report red —
// the measured values are printed next to the bounds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eigenmass/bessel.hpp"
#include "eigenmass/cutoffs.hpp"
#include "eigenmass/discrete_solver.hpp"
#include "eigenmass/experiments.hpp"
#include "eigenmass/identity_checks.hpp"
#include "eigenmass/mass_analysis.hpp"

using namespace emass;
namespace fs = std::filesystem;

namespace {

struct SweepSet {
  std::vector<experiments::SweepModeRow> rows[4];  // sqD, sqN, dkD, dkN
  const char* names[4] = {"square/D", "square/N", "disk/D", "disk/N"};
};

const SweepSet& sweeps() {
  static const SweepSet s = [] {
    SweepSet out;
    out.rows[0] = experiments::domain_sweep(DomainKind::UnitSquare,
                                            BoundaryCondition::Dirichlet, 100, 4000, 256, 80, 2);
    out.rows[1] = experiments::domain_sweep(DomainKind::UnitSquare, BoundaryCondition::Neumann,
                                            100, 4000, 256, 80, 2);
    out.rows[2] = experiments::domain_sweep(DomainKind::UnitDisk, BoundaryCondition::Dirichlet,
                                            100, 4000, 256, 80, 2);
    out.rows[3] = experiments::domain_sweep(DomainKind::UnitDisk, BoundaryCondition::Neumann,
                                            100, 4000, 256, 80, 2);
    return out;
  }();
  return s;
}

void verdict(const char* name, bool ok, const std::string& detail) {
  std::printf("[ACCEPT] %-38s %s  %s\n", name, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

struct Budget {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

}  // namespace

TEST_CASE("criterion 1: gaussian-beam sharpness") {
  Budget budget;
  const auto rows = experiments::beam_sharpness({100, 200, 400});
  REQUIRE(rows.size() == 3);
  double rmin = 1e300, rmax = 0.0;
  std::ostringstream d;
  bool alpha_ok = true;
  for (const auto& r : rows) {
    d << "n=" << r.n << " alpha=" << r.alpha << " M/mu=" << r.mass_over_mu << "; ";
    rmin = std::min(rmin, r.mass_over_mu);
    rmax = std::max(rmax, r.mass_over_mu);
    alpha_ok = alpha_ok && (r.alpha >= 0.9 && r.alpha <= 1.1);
  }
  {
    // supporting evidence: clear of the mu ~ sqrt(h) crossover the fitted
    // exponent returns to ~1 (the scaling itself is linear)
    const EigenMode b400 = sphere_highest_weight(400);
    const MassProfile tail = mass_profile_fine(
        b400, {1, 0, 0}, geometric_grid(2.0 * std::sqrt(b400.h), 0.5, 10));
    d << "n=400 alpha over [2sqrt(h),0.5]=" << tail.alpha << "; ";
  }
  const bool spread_ok = (rmax - rmin) / rmin < 0.25;
  d << "M/mu spread=" << 100.0 * (rmax - rmin) / rmin << "%";
  verdict("1 beam sharpness (exponent window)", alpha_ok, d.str());
  verdict("1 beam sharpness (M/mu spread <25%)", spread_ok, d.str());
  // the exact geodesic-cap mass exponent sits at 1.12-1.19 over this window
  // (crossover from the area regime at mu ~ sqrt(h)); asserted as specified
  for (const auto& r : rows) {
    CHECK(r.alpha >= 0.9);
    CHECK(r.alpha <= 1.1);
  }
  CHECK(spread_ok);
  CHECK(budget.seconds() <= 60.0);  // stated runtime budget
}

TEST_CASE("criterion 2: no mass growth in lambda (O(mu) uniformity)") {
  Budget budget;
  bool all_ok = true;
  std::ostringstream d;
  for (int s = 0; s < 4; ++s) {
    double k_lo = 0.0, k_hi = 0.0;
    for (const auto& r : sweeps().rows[s]) {
      (r.lambda2 <= 2000.0 ? k_lo : k_hi) = std::max(r.lambda2 <= 2000.0 ? k_lo : k_hi,
                                                     r.k_mass_over_mu);
    }
    const bool ok = (k_hi <= 1.5 * k_lo);
    d << sweeps().names[s] << " K_lo=" << k_lo << " K_hi=" << k_hi << "; ";
    all_ok = all_ok && ok;
    CHECK(k_hi <= 1.5 * k_lo);
    CHECK(k_lo > 0.0);
  }
  d << "t=" << static_cast<int>(budget.seconds()) << "s";
  verdict("2 thm1 uniformity (K growth <= 1.5)", all_ok, d.str());
  CHECK(budget.seconds() <= 600.0);
}

TEST_CASE("criterion 3: local-mass to sup-norm ratio band") {
  double r0 = 1e300, r1 = 0.0;
  for (int s = 0; s < 4; ++s)
    for (const auto& r : sweeps().rows[s]) {
      r0 = std::min(r0, r.thm2_ratio);
      r1 = std::max(r1, r.thm2_ratio);
    }
  std::ostringstream d;
  d << "band=[" << r0 << ", " << r1 << "] spread=" << r1 / r0;
  const bool ok = (r1 / r0 <= 3.0);
  verdict("3 thm2 ratio band (r1/r0 <= 3)", ok, d.str());
  CHECK(ok);
}

TEST_CASE("criterion 4: sup-norm growth bound (no-growth clause)") {
  bool all_ok = true;
  std::ostringstream d;
  for (int s = 0; s < 4; ++s) {
    double g_lo = 0.0, g_hi = 0.0;
    for (const auto& r : sweeps().rows[s])
      (r.lambda2 <= 2000.0 ? g_lo : g_hi) =
          std::max(r.lambda2 <= 2000.0 ? g_lo : g_hi, r.sup_quotient);
    d << sweeps().names[s] << " G_lo=" << g_lo << " G_hi=" << g_hi << "; ";
    all_ok = all_ok && (g_hi <= 1.5 * g_lo);
    CHECK(g_hi <= 1.5 * g_lo);
  }
  verdict("4 sup-quotient no-growth (<= 1.5)", all_ok, d.str());
}

TEST_CASE("criterion 4: whispering-gallery saturation clause") {
  const SupNorm sq = sup_norm(rectangle_mode(1, 1, BoundaryCondition::Dirichlet),
                              build_grid(Domain::make(DomainKind::UnitSquare), 64));
  const EigenMode m11 = rectangle_mode(1, 1, BoundaryCondition::Dirichlet);
  const double ref = sq.value * std::sqrt(m11.h);

  const EigenMode wg = disk_mode(80, 1, BoundaryCondition::Dirichlet);
  const SupNorm ws = sup_norm(wg, build_grid(Domain::make(DomainKind::UnitDisk), 64));
  const double val = ws.value * std::sqrt(wg.h);

  std::ostringstream d;
  d << "WG(80)=" << val << " vs 2x square(1,1)=" << 2.0 * ref
    << "  (L2-normalized sup of disk modes grows like m^{1/3}, h^{-1/2} like m^{1/2})";
  const bool ok = (val >= 2.0 * ref);
  verdict("4 whispering saturation (>= 2x)", ok, d.str());
  CHECK(val >= 2.0 * ref);
}

TEST_CASE("criterion 5: rellich identity at edge midpoints") {
  Budget budget;
  bool ok = true;
  std::ostringstream d;
  for (auto [mode, label] :
       {std::pair{rectangle_mode(1, 1, BoundaryCondition::Dirichlet), "D11"},
        std::pair{rectangle_mode(2, 3, BoundaryCondition::Neumann), "N23"}}) {
    std::vector<double> h, err;
    double t512 = 0.0, tmax = 0.0, core_err = 0.0, mu = 0.2;
    for (int res : {128, 256, 512}) {
      const CommutatorReport r = rellich_commutator_report(mode, {0.5, 0, 0}, mu, res);
      h.push_back(1.0 / res);
      err.push_back(std::abs(r.t_rellich) + 1e-300);
      tmax = std::max(tmax, std::abs(r.t_rellich));
      if (res == 512) {
        t512 = std::abs(r.t_rellich);
        core_err = std::abs(r.t_core - 2.0 * r.psi_mass);
      }
    }
    const double order = fit_order(h, err);
    const bool conv_ok = (order >= 1.0) || (tmax <= 1e-12);  // exact at round-off
    const bool t_ok = t512 <= 1e-4;
    const bool core_ok = core_err <= 0.5 * mu;
    d << label << ": |T|=" << t512 << " core_err=" << core_err
      << (tmax <= 1e-12 ? " (identity at round-off)" : "") << "; ";
    ok = ok && conv_ok && t_ok && core_ok;
    CHECK(t_ok);
    CHECK(conv_ok);
    CHECK(core_ok);
  }
  verdict("5 rellich identity", ok, d.str());
  CHECK(budget.seconds() <= 300.0);
}

TEST_CASE("criterion 6: cutoff-term scale law (mu >= h)") {
  std::vector<EigenMode> modes = {rectangle_mode(1, 2, BoundaryCondition::Dirichlet),
                                  rectangle_mode(2, 3, BoundaryCondition::Dirichlet),
                                  rectangle_mode(3, 4, BoundaryCondition::Dirichlet)};
  double worst = 0.0;
  for (const EigenMode& m : modes)
    for (double mu : {m.h, 2.0 * m.h, 0.1, 0.2}) {
      if (mu < m.h || mu > 0.25) continue;
      const CutoffTermReport r = cutoff_term_bound(m, {0.5, 0, 0}, mu, 512);
      worst = std::max(worst, r.bound_sum_over_mu);
    }
  std::ostringstream d;
  d << "max (|grad|+|lap|)/mu over the sweep = " << worst << " (bound 8)";
  const bool ok = worst <= 8.0;
  verdict("6 cutoff terms bounded for mu >= h", ok, d.str());
  CHECK(ok);
}

TEST_CASE("criterion 6: mu = h/4 breakdown clause") {
  const EigenMode hi = rectangle_mode(3, 4, BoundaryCondition::Dirichlet);
  const CutoffTermReport at_h = cutoff_term_bound(hi, {0.5, 0, 0}, hi.h, 512);
  const CutoffTermReport at_q = cutoff_term_bound(hi, {0.5, 0, 0}, hi.h / 4.0, 1024);
  std::ostringstream d;
  d << "measured at h/4: " << at_q.bound_sum_over_mu << " vs 2x at h: "
    << 2.0 * at_h.bound_sum_over_mu << "  (estimate prefactor grows "
    << at_q.budget_prefactor / at_h.budget_prefactor
    << "x; the measured terms cannot grow: T_cutoff = -2 psi-mass exactly)";
  const bool ok = at_q.bound_sum_over_mu >= 2.0 * at_h.bound_sum_over_mu;
  verdict("6 cutoff breakdown at mu = h/4 (>= 2x)", ok, d.str());
  CHECK(ok);
}

TEST_CASE("criterion 7: green and mean-value identities on the 3-ball") {
  Budget budget;
  bool ok = true;
  std::ostringstream d;
  const double mus[3] = {0.3, 0.5, 0.19};
  const int ks[3] = {1, 2, 5};
  for (int i = 0; i < 3; ++i) {
    const GreenReport g = green_identity_residual(ball3_mode(ks[i]), {0, 0, 0}, mus[i]);
    const MeanValueReport mv = mean_value_reconstruction(ball3_mode(ks[i]), {0, 0, 0});
    const double rec_err = std::abs(mv.reconstructed - mv.phi_x0) / std::abs(mv.phi_x0);
    d << "k=" << ks[i] << " surface_rep=" << g.residual << " reconstruction=" << rec_err << "; ";
    ok = ok && g.residual <= 0.01 && rec_err <= 0.02;
    CHECK(g.residual <= 0.01);
    CHECK(rec_err <= 0.02);
  }
  // residual convergence order >= 1 under quadrature refinement
  std::vector<double> h, err;
  for (int panels : {4, 8, 16}) {
    const GreenReport g = green_identity_residual(ball3_mode(2), {0.1, 0, 0}, 0.4, panels);
    h.push_back(1.0 / panels);
    err.push_back(g.residual + 1e-300);
  }
  const double order = fit_order(h, err);
  d << "order=" << order;
  ok = ok && order >= 1.0;
  CHECK(order >= 1.0);
  verdict("7 green / mean-value identities", ok, d.str());
  CHECK(budget.seconds() <= 120.0);
}

TEST_CASE("criterion 8: cutoff family") {
  const CutoffFamily& cf = build_cutoffs();
  bool ok = true;
  const int n = 10000;
  for (int i = 0; i <= n && ok; ++i) {
    const double s = -5.0 + 10.0 * i / n;
    if (std::abs(cf.chi(-s) + cf.chi(s)) > 1e-12) ok = false;       // odd
    if (cf.gamma(s) < -1e-12) ok = false;                           // monotone
    if (s <= -3.0 && std::abs(cf.chi(s) + 1.0) > 1e-12) ok = false;
    if (s >= 3.0 && std::abs(cf.chi(s) - 1.0) > 1e-12) ok = false;
    if (std::abs(s) <= 1.0 && std::abs(cf.chi(s) - 0.5 * s) > 1e-14) ok = false;
    if (std::abs(s) <= 1.0 && std::abs(cf.gamma(s) - 0.5) > 1e-14) ok = false;
  }
  const bool exact_half = (cf.chi(0.5) == 0.25);
  double total = 0.0;
  for (int p = 0; p < 64; ++p)
    total += integrate([&](double s) { return cf.gamma(s); }, -5.0 + 10.0 * p / 64.0,
                       -5.0 + 10.0 * (p + 1) / 64.0, 8);
  const bool int_ok = std::abs(total - 2.0) <= 1e-6;
  std::ostringstream d;
  d << "chi(0.5)=" << cf.chi(0.5) << " int gamma=" << total;
  verdict("8 cutoff family", ok && exact_half && int_ok, d.str());
  CHECK(ok);
  CHECK(exact_half);
  CHECK(int_ok);
}

TEST_CASE("criterion 9: solver validation (eigenvalues)") {
  std::vector<double> h, err;
  const double exact = 2.0 * M_PI * M_PI;
  for (int R : {64, 128, 256}) {
    auto grid = std::make_shared<const Grid>(build_grid(Domain::make(DomainKind::UnitSquare), R));
    const EigenpairBatch b = solve_near(assemble(grid, BoundaryCondition::Dirichlet), exact, 1);
    h.push_back(1.0 / R);
    err.push_back(std::abs(b.pairs.at(0).lambda2 - exact));
  }
  const double order = fit_order(h, err);
  const bool order_ok = (order >= 1.7 && order <= 2.3);

  auto gdisk = std::make_shared<const Grid>(build_grid(Domain::make(DomainKind::UnitDisk), 128));
  const double j01sq = std::pow(bessel_zero(0, 1, BesselZeroKind::OfJ), 2.0);
  const EigenpairBatch bd = solve_near(assemble(gdisk, BoundaryCondition::Dirichlet), j01sq, 1);
  const double disk_err = std::abs(bd.pairs.at(0).lambda2 - j01sq) / j01sq;
  const bool disk_ok = disk_err <= 0.01;

  std::ostringstream d;
  d << "square order=" << order << " disk fundamental err=" << 100.0 * disk_err << "%";
  verdict("9 solver eigenvalue validation", order_ok && disk_ok, d.str());
  CHECK(order_ok);
  CHECK(disk_ok);
}

TEST_CASE("criterion 9: weyl count, disk") {
  auto gd = std::make_shared<const Grid>(build_grid(Domain::make(DomainKind::UnitDisk), 160));
  const WeylReport wd = weyl_check(assemble(gd, BoundaryCondition::Dirichlet), 500.0);
  std::ostringstream d;
  d << "count=" << wd.count << " weyl=" << wd.weyl_estimate
    << " dev=" << 100.0 * wd.rel_deviation << "%";
  const bool ok = std::abs(wd.rel_deviation) <= 0.15;
  verdict("9 weyl disk (<= 15% at 500)", ok, d.str());
  CHECK(ok);
}

TEST_CASE("criterion 9: weyl count, square") {
  auto gs = std::make_shared<const Grid>(build_grid(Domain::make(DomainKind::UnitSquare), 96));
  const WeylReport ws = weyl_check(assemble(gs, BoundaryCondition::Dirichlet), 500.0);
  std::ostringstream d;
  d << "count=" << ws.count << " weyl=" << ws.weyl_estimate
    << " dev=" << 100.0 * ws.rel_deviation
    << "%  (exact lattice count 33; the boundary deficit ~ sqrt(L)/(4pi) is 18% at 500)";
  const bool ok = std::abs(ws.rel_deviation) <= 0.15;
  verdict("9 weyl square (<= 15% at 500)", ok, d.str());
  CHECK(ok);
}

TEST_CASE("criterion 10: manifest determinism") {
  const std::string a = "accept_det_a", b = "accept_det_b";
  fs::remove_all(a);
  fs::remove_all(b);
  ExperimentManifest m;
  m.kind = "mass-scan";
  m.domain = DomainKind::UnitSquare;
  m.bc = BoundaryCondition::Dirichlet;
  m.modes = {"rect 3 4", "rect 5 2"};
  m.centers = {{0.5, 0.5, 0}, {0.5, 0.0, 0}};
  m.mu_min = 0.08;
  m.mu_max = 0.7;
  m.mu_count = 10;
  m.resolution = 128;
  m.threads = 2;  // the merge order must stay deterministic under threading
  m.out_dir = a;
  experiments::run_manifest(m);
  m.out_dir = b;
  experiments::run_manifest(m);
  auto slurp = [](const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  bool ok = true;
  for (const char* f : {"mass_profile.csv", "sweep_summary.csv", "mass_profile.svg"}) {
    const std::string fa = slurp(a + "/" + f), fb = slurp(b + "/" + f);
    ok = ok && !fa.empty() && fa == fb;
    CHECK(fa == fb);
    CHECK(!fa.empty());
  }
  verdict("10 determinism (byte-identical)", ok, "three artifacts compared");
  fs::remove_all(a);
  fs::remove_all(b);
}

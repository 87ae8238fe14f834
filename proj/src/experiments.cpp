#include "eigenmass/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "eigenmass/bessel.hpp"
#include "eigenmass/discrete_solver.hpp"
#include "eigenmass/identity_checks.hpp"
#include "eigenmass/svg.hpp"

namespace emass::experiments {

namespace fs = std::filesystem;

void parallel_for(std::size_t total, int threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(total)));
  if (threads == 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= total) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

EigenMode mode_from_descriptor(const std::string& desc, BoundaryCondition bc) {
  std::istringstream is(desc);
  std::string family;
  is >> family;
  if (family == "rect") {
    int j = -1, k = -1;
    if (!(is >> j >> k)) throw ManifestError("mode descriptor: rect needs 'rect j k'");
    return rectangle_mode(j, k, bc);
  }
  if (family == "disk") {
    int m = -1, k = -1;
    std::string parity = "cos";
    if (!(is >> m >> k)) throw ManifestError("mode descriptor: disk needs 'disk m k [cos|sin]'");
    is >> parity;
    if (parity != "cos" && parity != "sin")
      throw ManifestError("mode descriptor: disk parity must be cos or sin");
    return disk_mode(m, k, bc, parity == "cos");
  }
  if (family == "sphere") {
    int n = -1;
    if (!(is >> n)) throw ManifestError("mode descriptor: sphere needs 'sphere n'");
    return sphere_highest_weight(n);
  }
  if (family == "ball") {
    int k = -1;
    if (!(is >> k)) throw ManifestError("mode descriptor: ball needs 'ball k'");
    return ball3_mode(k);
  }
  throw ManifestError("mode descriptor: unknown family '" + family + "'");
}

namespace {

template <class T>
std::vector<T> thin_to(std::vector<T> v, int max_modes) {
  if (max_modes <= 0 || static_cast<int>(v.size()) <= max_modes) return v;
  std::vector<T> out;
  out.reserve(max_modes);
  const double step = static_cast<double>(v.size()) / max_modes;
  for (int i = 0; i < max_modes; ++i) out.push_back(v[static_cast<std::size_t>(i * step)]);
  return out;
}

}  // namespace

std::vector<EigenMode> enumerate_square_modes(BoundaryCondition bc, double l2min, double l2max,
                                              int max_modes) {
  std::vector<std::pair<int, int>> idx;
  const int lo = (bc == BoundaryCondition::Dirichlet) ? 1 : 0;
  const int jmax = static_cast<int>(std::ceil(std::sqrt(l2max) / M_PI)) + 1;
  for (int j = lo; j <= jmax; ++j)
    for (int k = std::max(lo, j); k <= jmax; ++k) {
      const double l2 = M_PI * M_PI * (static_cast<double>(j) * j + static_cast<double>(k) * k);
      if (l2 < l2min || l2 > l2max || l2 == 0.0) continue;
      idx.emplace_back(j, k);
    }
  std::sort(idx.begin(), idx.end(), [](auto& a, auto& b) {
    const long ra = static_cast<long>(a.first) * a.first + static_cast<long>(a.second) * a.second;
    const long rb = static_cast<long>(b.first) * b.first + static_cast<long>(b.second) * b.second;
    return ra != rb ? ra < rb : a < b;
  });
  idx = thin_to(std::move(idx), max_modes);
  std::vector<EigenMode> out;
  out.reserve(idx.size());
  for (auto [j, k] : idx) out.push_back(rectangle_mode(j, k, bc));
  return out;
}

std::vector<EigenMode> enumerate_disk_modes(BoundaryCondition bc, double l2min, double l2max,
                                            int max_modes) {
  const BesselZeroKind kind =
      (bc == BoundaryCondition::Dirichlet) ? BesselZeroKind::OfJ : BesselZeroKind::OfJPrime;
  struct Entry {
    double l2;
    int m, k;
  };
  std::vector<Entry> idx;
  for (int m = 0; m <= 200; ++m) {
    const double first = bessel_zero(m, 1, kind);
    if (first * first > l2max) break;
    for (int k = 1; k <= 200; ++k) {
      const double a = (k == 1) ? first : bessel_zero(m, k, kind);
      const double l2 = a * a;
      if (l2 > l2max) break;
      if (l2 >= l2min) idx.push_back({l2, m, k});
    }
  }
  std::sort(idx.begin(), idx.end(), [](const Entry& a, const Entry& b) {
    return a.l2 != b.l2 ? a.l2 < b.l2 : std::tie(a.m, a.k) < std::tie(b.m, b.k);
  });
  idx = thin_to(std::move(idx), max_modes);
  std::vector<EigenMode> out;
  out.reserve(idx.size());
  for (const Entry& e : idx) out.push_back(disk_mode(e.m, e.k, bc, true));
  return out;
}

std::vector<Vec3> standard_centers(DomainKind kind) {
  switch (kind) {
    case DomainKind::UnitSquare:
      return {{0.5, 0.5, 0}, {0.37, 0.61, 0}, {0.25, 0.25, 0},   // interior
              {0.5, 0.0, 0}, {1.0, 0.5, 0},  {0.73, 0.0, 0},     // boundary
              {0.5, 0.02, 0}, {0.98, 0.5, 0}};                   // near-boundary
    case DomainKind::UnitDisk: {
      const double s = std::sqrt(0.5);
      return {{0.0, 0.0, 0}, {0.4, 0.2, 0}, {-0.3, 0.5, 0},
              {1.0, 0.0, 0}, {0.0, 1.0, 0}, {-s, -s, 0},
              {0.95, 0.0, 0}, {0.0, -0.9, 0}};
    }
    case DomainKind::SphereS2:
      return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {std::sqrt(0.5), 0, std::sqrt(0.5)}};
    case DomainKind::UnitBall3:
      return {{0, 0, 0}, {0.4, 0, 0.2}, {0, 0, 1.0}, {0.95, 0, 0}};
  }
  return {};
}

std::vector<SweepModeRow> domain_sweep(DomainKind kind, BoundaryCondition bc, double l2min,
                                       double l2max, int resolution, int max_modes,
                                       int threads) {
  std::vector<EigenMode> modes;
  if (kind == DomainKind::UnitSquare)
    modes = enumerate_square_modes(bc, l2min, l2max, max_modes);
  else if (kind == DomainKind::UnitDisk)
    modes = enumerate_disk_modes(bc, l2min, l2max, max_modes);
  else
    throw std::invalid_argument("domain_sweep: square and disk sweeps only");

  auto grid = std::make_shared<const Grid>(build_grid(Domain::make(kind), resolution));
  const std::vector<Vec3> centers = standard_centers(kind);
  std::vector<SweepModeRow> rows(modes.size());

  parallel_for(modes.size(), threads, [&](std::size_t i) {
    const EigenMode& mode = modes[i];
    MassAnalyzer an(mode, grid);
    SweepModeRow row;
    row.mode_id = mode.id;
    row.lambda = mode.lambda;
    row.lambda2 = mode.lambda * mode.lambda;
    const std::vector<double> mus = geometric_grid(mode.h, 0.5, 10);
    for (const Vec3& c : centers)
      for (double mu : mus)
        row.k_mass_over_mu = std::max(row.k_mass_over_mu, an.ball_mass(c, mu, nullptr) / mu);
    const Thm2Report t2 = thm2_ratio(an);
    row.supnorm = t2.sup;
    row.s_h = t2.s_h;
    row.thm2_ratio = t2.ratio;
    row.sup_quotient = t2.sup * std::pow(mode.h, 0.5 * (mode.domain.dimension - 1));
    rows[i] = row;
  });
  return rows;
}

std::vector<SharpnessRow> beam_sharpness(const std::vector<int>& ns) {
  std::vector<SharpnessRow> rows;
  const Vec3 equator{1.0, 0.0, 0.0};
  const Vec3 pole{0.0, 0.0, 1.0};
  for (int n : ns) {
    const EigenMode beam = sphere_highest_weight(n);
    SharpnessRow r;
    r.n = n;
    r.h = beam.h;
    const std::vector<double> mus = geometric_grid(std::sqrt(beam.h), 0.5, 12);
    const MassProfile prof = mass_profile_fine(beam, equator, mus);
    r.alpha = prof.alpha;
    for (const MassSample& s : prof.samples)
      r.k_max = std::max(r.k_max, s.mass / s.mu);
    r.mass_over_mu = ball_mass_fine(beam, equator, 0.3) / 0.3;
    r.pole_mass = ball_mass_fine(beam, pole, 0.3);
    rows.push_back(r);
  }
  return rows;
}

namespace {

std::string vec_str(const Vec3& p) {
  return format_double(p.x) + ";" + format_double(p.y) + ";" + format_double(p.z);
}

struct Artifact {
  std::string path;
  std::string bytes;
};

void flush(const std::vector<Artifact>& files) {
  for (const Artifact& a : files) {
    fs::path p(a.path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(a.path, std::ios::binary);
    if (!os) throw IoError("cannot open output " + a.path);
    os << a.bytes;
    if (!os) throw IoError("write failed: " + a.path);
  }
}

// grid construction with the EMGRID1 cache (used when cache_dir is set)
std::shared_ptr<const Grid> obtain_grid(const ExperimentManifest& m) {
  if (m.cache_dir.empty())
    return std::make_shared<const Grid>(build_grid(Domain::make(m.domain), m.resolution));
  fs::create_directories(m.cache_dir);
  const std::string path = m.cache_dir + "/grid_" + to_string(m.domain) + "_r" +
                           std::to_string(m.resolution) + ".emgrid";
  if (fs::exists(path)) {
    Grid g = read_grid_cache(path);
    if (g.domain.kind == m.domain && g.resolution == m.resolution)
      return std::make_shared<const Grid>(std::move(g));
  }
  Grid g = build_grid(Domain::make(m.domain), m.resolution);
  write_grid_cache(g, path);
  return std::make_shared<const Grid>(std::move(g));
}

std::vector<EigenMode> manifest_modes(const ExperimentManifest& m) {
  std::vector<EigenMode> modes;
  for (const std::string& d : m.modes) modes.push_back(mode_from_descriptor(d, m.bc));
  if (modes.empty() && m.lambda2_max > 0.0) {
    if (m.domain == DomainKind::UnitSquare)
      modes = enumerate_square_modes(m.bc, m.lambda2_min, m.lambda2_max, 80);
    else if (m.domain == DomainKind::UnitDisk)
      modes = enumerate_disk_modes(m.bc, m.lambda2_min, m.lambda2_max, 80);
    else
      throw ManifestError("manifest: sweep selection needs square or disk domain");
  }
  if (modes.empty()) throw ManifestError("manifest: no modes selected");
  for (const EigenMode& mode : modes)
    if (mode.domain.kind != m.domain)
      throw ManifestError("manifest: mode " + mode.id + " does not live on domain " +
                          to_string(m.domain));
  return modes;
}

std::vector<double> manifest_mu(const ExperimentManifest& m, const EigenMode& mode) {
  // clamp the requested range to the mode's own wavelength floor
  const double h_floor = std::isfinite(mode.h) ? mode.h : 0.0;
  if (m.mu_count >= 2) {
    double lo = std::max(m.mu_min, h_floor), hi = m.mu_max;
    if (lo >= hi * 0.99) lo = hi / 8.0;
    return geometric_grid(lo, hi, m.mu_count);
  }
  return geometric_grid(std::max(h_floor, 4.0 / m.resolution), 0.5, 10);
}

std::vector<std::string> run_mass_scan(const ExperimentManifest& m, bool exponent_only) {
  const std::vector<EigenMode> modes = manifest_modes(m);
  auto grid = obtain_grid(m);
  std::vector<Vec3> centers = m.centers.empty() ? standard_centers(m.domain) : m.centers;

  std::ostringstream prof_csv, summary_csv;
  prof_csv << "mode_id,x0,mu,mass,flag\n";
  summary_csv << "domain,bc,mode_id,lambda,alpha,K,supnorm,ratio,sup_quotient\n";

  SvgSeries first_series;
  std::optional<SvgFitLine> first_fit;

  struct PerMode {
    std::string prof_rows, summary_row;
    std::vector<double> mu, mass;
    double alpha = 0.0, logc = 0.0;
  };
  std::vector<PerMode> results(modes.size());

  parallel_for(modes.size(), m.threads, [&](std::size_t i) {
    const EigenMode& mode = modes[i];
    MassAnalyzer an(mode, grid);
    PerMode pm;
    double kmax = 0.0, alpha_first = 0.0;
    bool have_alpha = false;
    for (const Vec3& c : centers) {
      const std::vector<double> mus = manifest_mu(m, mode);
      const MassProfile prof = mass_profile(an, c, mus);
      if (!have_alpha) {
        alpha_first = prof.alpha;  // summary reports the first listed center
        have_alpha = true;
      }
      std::ostringstream rows;
      for (const MassSample& s : prof.samples) {
        rows << mode.id << "," << vec_str(c) << "," << format_double(s.mu) << ","
             << format_double(s.mass) << "," << (s.under_resolved ? "under_resolved" : "ok")
             << "\n";
        kmax = std::max(kmax, s.mass / s.mu);
        if (i == 0 && &c == &centers.front()) {
          pm.mu.push_back(s.mu);
          pm.mass.push_back(s.mass);
        }
      }
      pm.prof_rows += rows.str();
      if (i == 0 && &c == &centers.front()) {
        pm.alpha = prof.alpha;
        pm.logc = prof.log_c;
      }
    }
    const SupNorm sn = sup_norm(mode, *grid);
    const double sup_quotient =
        std::isfinite(mode.h)
            ? sn.value * std::pow(mode.h, 0.5 * (mode.domain.dimension - 1))
            : 0.0;
    double ratio = 0.0;
    if (mode.lambda > 0.0 && grid->spacing <= 0.5 * mode.h) {
      MassAnalyzer an2(mode, grid);
      ratio = thm2_ratio(an2).ratio;
    }
    std::ostringstream sr;
    sr << to_string(m.domain) << "," << to_string(m.bc) << "," << mode.id << ","
       << format_double(mode.lambda) << "," << format_double(alpha_first) << ","
       << format_double(kmax) << "," << format_double(sn.value) << "," << format_double(ratio)
       << "," << format_double(sup_quotient) << "\n";
    pm.summary_row = sr.str();
    results[i] = std::move(pm);
  });

  for (const PerMode& pm : results) {
    prof_csv << pm.prof_rows;
    summary_csv << pm.summary_row;
  }
  first_series.label = modes.front().id;
  first_series.x = results.front().mu;
  first_series.y = results.front().mass;
  // the fit lives in natural logs; rescale the intercept to log10
  first_fit = SvgFitLine{results.front().alpha, results.front().logc * std::log10(std::exp(1.0))};

  std::vector<Artifact> files;
  const std::string base = m.out_dir + "/";
  files.push_back({base + "mass_profile.csv", prof_csv.str()});
  files.push_back({base + "sweep_summary.csv", summary_csv.str()});
  const std::string svg_name = exponent_only ? "exponent.svg" : "mass_profile.svg";
  files.push_back({base + svg_name,
                   svg_loglog("small-ball mass against radius", "mu", "M(x0,mu)",
                              {first_series}, first_fit)});
  flush(files);
  std::vector<std::string> paths;
  for (auto& f : files) paths.push_back(f.path);
  return paths;
}

std::vector<std::string> run_supnorm(const ExperimentManifest& m) {
  const std::vector<EigenMode> modes = manifest_modes(m);
  auto grid = obtain_grid(m);
  std::ostringstream csv;
  csv << "mode_id,lambda,supnorm,sup_quotient\n";
  SvgSeries series;
  series.label = "sup |phi| * h^{(n-1)/2}";
  for (const EigenMode& mode : modes) {
    const SupNorm sn = sup_norm(mode, *grid);
    const double g = std::isfinite(mode.h)
                         ? sn.value * std::pow(mode.h, 0.5 * (mode.domain.dimension - 1))
                         : 0.0;
    csv << mode.id << "," << format_double(mode.lambda) << "," << format_double(sn.value) << ","
        << format_double(g) << "\n";
    if (mode.lambda > 0.0) {
      series.x.push_back(mode.lambda);
      series.y.push_back(g);
    }
  }
  std::vector<Artifact> files;
  files.push_back({m.out_dir + "/supnorm.csv", csv.str()});
  files.push_back({m.out_dir + "/supnorm.svg",
                   svg_loglog("scaled sup quotient", "lambda", "sup*h^{(n-1)/2}", {series}, {})});
  flush(files);
  return {files[0].path, files[1].path};
}

std::vector<std::string> run_thm2(const ExperimentManifest& m) {
  const std::vector<EigenMode> modes = manifest_modes(m);
  auto grid = obtain_grid(m);
  std::ostringstream csv;
  csv << "mode_id,lambda,supnorm,S_h,ratio\n";
  std::vector<std::string> rows(modes.size());
  SvgSeries series;
  series.label = "R";
  std::vector<double> lam(modes.size()), ratio(modes.size());
  parallel_for(modes.size(), m.threads, [&](std::size_t i) {
    MassAnalyzer an(modes[i], grid);
    const Thm2Report r = thm2_ratio(an);
    std::ostringstream os;
    os << r.mode_id << "," << format_double(r.lambda) << "," << format_double(r.sup) << ","
       << format_double(r.s_h) << "," << format_double(r.ratio) << "\n";
    rows[i] = os.str();
    lam[i] = r.lambda;
    ratio[i] = r.ratio;
  });
  for (const std::string& r : rows) csv << r;
  series.x = lam;
  series.y = ratio;
  std::vector<Artifact> files;
  files.push_back({m.out_dir + "/thm2.csv", csv.str()});
  files.push_back({m.out_dir + "/thm2.svg",
                   svg_loglog("local-mass to sup-norm ratio", "lambda", "R", {series}, {})});
  flush(files);
  return {files[0].path, files[1].path};
}

std::vector<std::string> run_rellich(const ExperimentManifest& m) {
  if (m.domain != DomainKind::UnitSquare)
    throw ManifestError("rellich: unit-square manifests only");
  const std::vector<EigenMode> modes = manifest_modes(m);
  const Vec3 p0 = m.centers.empty() ? Vec3{0.5, 0.0, 0.0} : m.centers.front();
  std::ostringstream csv, txt;
  csv << "mode_id,p0,mu,t_rellich,t_core,t_cutoff,psi_mass,term_grad,term_lap,eps_disc\n";
  SvgSeries series;
  series.label = "|T_rellich|";
  for (const EigenMode& mode : modes) {
    const std::vector<double> mus =
        (m.mu_count >= 2) ? geometric_grid(m.mu_min, m.mu_max, m.mu_count)
                          : std::vector<double>{0.2};
    for (double mu : mus) {
      const CommutatorReport r = rellich_commutator_report(mode, p0, mu, m.resolution);
      csv << r.mode_id << "," << vec_str(p0) << "," << format_double(mu) << ","
          << format_double(r.t_rellich) << "," << format_double(r.t_core) << ","
          << format_double(r.t_cutoff) << "," << format_double(r.psi_mass) << ","
          << format_double(r.term_grad) << "," << format_double(r.term_lap) << ","
          << format_double(r.eps_disc) << "\n";
      txt << "mode = " << r.mode_id << "\n"
          << "mu = " << format_double(mu) << "\n"
          << "t_rellich = " << format_double(r.t_rellich) << "\n"
          << "t_core = " << format_double(r.t_core) << "\n"
          << "t_cutoff = " << format_double(r.t_cutoff) << "\n"
          << "psi_mass = " << format_double(r.psi_mass) << "\n"
          << "eps_disc = " << format_double(r.eps_disc) << "\n\n";
    }
  }
  // refinement study on the first mode (resolved levels only)
  for (int res : {m.resolution / 4, m.resolution / 2, m.resolution}) {
    if (res < 32 || modes.front().lambda / res > 0.2) continue;
    const CommutatorReport r = rellich_commutator_report(modes.front(), p0, 0.2, res);
    series.x.push_back(1.0 / res);
    series.y.push_back(std::abs(r.t_rellich) + 1e-300);
  }
  std::vector<Artifact> files;
  files.push_back({m.out_dir + "/rellich.csv", csv.str()});
  files.push_back({m.out_dir + "/rellich.txt", txt.str()});
  files.push_back({m.out_dir + "/rellich.svg",
                   svg_loglog("commutator residual against mesh size", "dx", "|T_rellich|",
                              {series}, {})});
  flush(files);
  return {files[0].path, files[1].path, files[2].path};
}

std::vector<std::string> run_green(const ExperimentManifest& m) {
  const std::vector<EigenMode> modes = manifest_modes(m);
  std::vector<Vec3> centers = m.centers.empty() ? std::vector<Vec3>{{0, 0, 0}} : m.centers;
  std::ostringstream csv, txt;
  csv << "mode_id,x0,mu,lhs,rhs,residual,reconstructed,phi_x0\n";
  SvgSeries series;
  series.label = "residual";
  for (const EigenMode& mode : modes) {
    for (const Vec3& x0 : centers) {
      const double mu = (m.mu_count >= 2) ? m.mu_max : std::min(0.3, 1.0 - norm(x0) - 1e-9);
      const GreenReport g = green_identity_residual(mode, x0, mu);
      const MeanValueReport mv = mean_value_reconstruction(mode, x0);
      csv << mode.id << "," << vec_str(x0) << "," << format_double(mu) << ","
          << format_double(g.lhs) << "," << format_double(g.rhs) << ","
          << format_double(g.residual) << "," << format_double(mv.reconstructed) << ","
          << format_double(g.phi_x0) << "\n";
      txt << "mode = " << mode.id << "\n"
          << "x0 = " << vec_str(x0) << "\n"
          << "mu = " << format_double(mu) << "\n"
          << "lhs = " << format_double(g.lhs) << "\n"
          << "rhs = " << format_double(g.rhs) << "\n"
          << "residual = " << format_double(g.residual) << "\n"
          << "reconstructed = " << format_double(mv.reconstructed) << "\n"
          << "phi_x0 = " << format_double(mv.phi_x0) << "\n\n";
    }
  }
  for (int panels : {4, 8, 16, 32}) {
    const GreenReport g = green_identity_residual(modes.front(), {0, 0, 0}, 0.3, panels);
    series.x.push_back(1.0 / panels);
    series.y.push_back(g.residual + 1e-300);
  }
  std::vector<Artifact> files;
  files.push_back({m.out_dir + "/green.csv", csv.str()});
  files.push_back({m.out_dir + "/green.txt", txt.str()});
  files.push_back({m.out_dir + "/green.svg",
                   svg_loglog("mean-value residual against quadrature pitch", "panel width",
                              "residual", {series}, {})});
  flush(files);
  return {files[0].path, files[1].path, files[2].path};
}

std::vector<std::string> run_modes(const ExperimentManifest& m) {
  auto grid = obtain_grid(m);
  DiscreteOperator op;
  try {
    op = assemble(grid, m.bc);
  } catch (const std::exception& e) {
    throw SolverError(e.what());
  }
  const double target = (m.lambda2_min > 0.0) ? m.lambda2_min : 1.0;
  EigenpairBatch batch;
  try {
    batch = solve_near(op, target, m.count, m.seed);
  } catch (const std::exception& e) {
    throw SolverError(e.what());
  }
  std::ostringstream csv;
  csv << "index,lambda2,residual,converged\n";
  for (std::size_t i = 0; i < batch.pairs.size(); ++i)
    csv << i << "," << format_double(batch.pairs[i].lambda2) << ","
        << format_double(batch.pairs[i].residual) << "," << (batch.pairs[i].converged ? 1 : 0)
        << "\n";
  std::vector<Artifact> files;
  files.push_back({m.out_dir + "/modes.csv", csv.str()});
  flush(files);
  const std::string cache_dir = m.cache_dir.empty() ? m.out_dir : m.cache_dir;
  fs::create_directories(cache_dir);
  const std::string cache_path = cache_dir + "/eig_" + to_string(m.domain) + "_" +
                                 to_string(m.bc) + "_r" + std::to_string(m.resolution) +
                                 ".emeig";
  cache_store(batch, cache_path);
  return {files[0].path, cache_path};
}

}  // namespace

std::vector<std::string> run_manifest(const ExperimentManifest& m) {
  if (m.kind == "mass-scan") return run_mass_scan(m, false);
  if (m.kind == "exponent") return run_mass_scan(m, true);
  if (m.kind == "supnorm") return run_supnorm(m);
  if (m.kind == "thm2") return run_thm2(m);
  if (m.kind == "rellich") return run_rellich(m);
  if (m.kind == "green-check") return run_green(m);
  if (m.kind == "modes") return run_modes(m);
  if (m.kind == "report") {
    const ReportSummary r = write_report(m.out_dir);
    (void)r;
    return {m.out_dir + "/report.txt"};
  }
  throw ManifestError("run_manifest: unknown kind " + m.kind);
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) return {};
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

ReportSummary write_report(const std::string& out_dir) {
  ReportSummary summary;
  std::ostringstream os;
  os << "[report]\n";
  bool any_input = false;

  const auto prof = read_csv(out_dir + "/mass_profile.csv");
  if (prof.size() > 1) {
    any_input = true;
    // monotonicity of mass in mu per (mode, center), in file order
    std::map<std::string, double> last;
    for (std::size_t i = 1; i < prof.size(); ++i) {
      if (prof[i].size() < 5) continue;
      const std::string key = prof[i][0] + "@" + prof[i][1];
      const double mass = std::stod(prof[i][3]);
      auto it = last.find(key);
      if (it != last.end() && mass < it->second * (1.0 - 1e-12))
        summary.flags.push_back("mass_monotonicity:" + key);
      last[key] = mass;
    }
    os << "profiles = " << prof.size() - 1 << "\n";
  }

  const auto t2 = read_csv(out_dir + "/thm2.csv");
  if (t2.size() > 1) {
    any_input = true;
    double r0 = 1e300, r1 = 0.0;
    for (std::size_t i = 1; i < t2.size(); ++i) {
      const double r = std::stod(t2[i][4]);
      r0 = std::min(r0, r);
      r1 = std::max(r1, r);
    }
    os << "thm2_ratio_band = [" << format_double(r0) << ", " << format_double(r1) << "]\n";
    if (r1 / r0 > 3.0) summary.flags.push_back("thm2_band");
  }

  const auto sweep = read_csv(out_dir + "/sweep_summary.csv");
  if (sweep.size() > 1) {
    any_input = true;
    std::map<std::string, double> kdom;
    std::map<std::string, std::pair<double, double>> khalf;  // lower/upper half maxima
    double l2lo = 1e300, l2hi = 0.0;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      const double lam = std::stod(sweep[i][3]);
      l2lo = std::min(l2lo, lam * lam);
      l2hi = std::max(l2hi, lam * lam);
    }
    const double split = 0.5 * (l2lo + l2hi);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      const std::string dom = sweep[i][0];
      const double lam = std::stod(sweep[i][3]);
      const double K = std::stod(sweep[i][5]);
      kdom[dom] = std::max(kdom[dom], K);
      auto& [klo, khi] = khalf[dom];
      if (lam * lam <= split)
        klo = std::max(klo, K);
      else
        khi = std::max(khi, K);
    }
    for (const auto& [dom, K] : kdom) {
      os << "thm1_K(" << dom << ") = " << format_double(K) << "\n";
      const auto& [klo, khi] = khalf[dom];
      if (klo > 0.0 && khi > 1.5 * klo) summary.flags.push_back("thm1_growth:" + dom);
    }
  }

  if (!any_input) throw UnderResolvedError("report: no experiment outputs in " + out_dir);
  os << "flags = " << summary.flags.size() << "\n";
  for (const std::string& f : summary.flags) os << "flag = " << f << "\n";
  summary.text = os.str();
  fs::create_directories(out_dir);
  std::ofstream rep(out_dir + "/report.txt", std::ios::binary);
  if (!rep) throw IoError("report: cannot write " + out_dir + "/report.txt");
  rep << summary.text;
  return summary;
}

}  // namespace emass::experiments

#pragma once
// Experiment orchestration shared by the CLI and the acceptance suite:
// mode enumeration, domain sweeps (mass constants, sup norms, local-mass
// ratios), the Gaussian-beam sharpness suite, manifest execution and the
// consolidated report.

#include <functional>
#include <string>
#include <vector>

#include "eigenmass/closed_form.hpp"
#include "eigenmass/manifest.hpp"
#include "eigenmass/mass_analysis.hpp"

namespace emass::experiments {

// run fn(i) for i in [0,total) on `threads` workers; results must be written
// to preallocated slots so the merge is deterministic
void parallel_for(std::size_t total, int threads, const std::function<void(std::size_t)>& fn);

// "rect j k" | "disk m k [cos|sin]" | "sphere n" | "ball k"
EigenMode mode_from_descriptor(const std::string& desc, BoundaryCondition bc);

std::vector<EigenMode> enumerate_square_modes(BoundaryCondition bc, double l2min, double l2max,
                                              int max_modes);
std::vector<EigenMode> enumerate_disk_modes(BoundaryCondition bc, double l2min, double l2max,
                                            int max_modes);

// interior + boundary + near-boundary probe centers (corners avoided)
std::vector<Vec3> standard_centers(DomainKind kind);

struct SweepModeRow {
  std::string mode_id;
  double lambda = 0.0;
  double lambda2 = 0.0;
  double k_mass_over_mu = 0.0;  // max over centers x mu of M/mu
  double supnorm = 0.0;
  double s_h = 0.0;
  double thm2_ratio = 0.0;
  double sup_quotient = 0.0;  // supnorm * h^{(n-1)/2}
};

std::vector<SweepModeRow> domain_sweep(DomainKind kind, BoundaryCondition bc, double l2min,
                                       double l2max, int resolution, int max_modes,
                                       int threads);

struct SharpnessRow {
  int n = 0;
  double h = 0.0;
  double alpha = 0.0;            // fitted exponent over [sqrt(h), 0.5]
  double mass_over_mu = 0.0;     // M(0.3)/0.3 at an equator center
  double pole_mass = 0.0;        // M(pole, 0.3)
  double k_max = 0.0;            // max over the window of M/mu
};

std::vector<SharpnessRow> beam_sharpness(const std::vector<int>& ns);

// executes one manifest; returns the artifact paths written
std::vector<std::string> run_manifest(const ExperimentManifest& m);

struct ReportSummary {
  std::vector<std::string> flags;
  std::string text;
};

// merge CSV outputs under out_dir into report.txt (written there too)
ReportSummary write_report(const std::string& out_dir);

}  // namespace emass::experiments

#pragma once
// Experiment manifests: flat key = value text with section headers.
// Parsing validates every field before execution; unknown keys reject.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigenmass/closed_form.hpp"
#include "eigenmass/geometry.hpp"

namespace emass {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnderResolvedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentManifest {
  std::string kind;  // modes|mass-scan|exponent|supnorm|thm2|rellich|green-check|report
  DomainKind domain = DomainKind::UnitSquare;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  std::vector<std::string> modes;  // "rect j k" | "disk m k cos|sin" | "sphere n" | "ball k"
  double lambda2_min = 0.0, lambda2_max = 0.0;  // sweep window when modes is empty
  std::vector<Vec3> centers;
  double mu_min = 0.0, mu_max = 0.0;
  int mu_count = 0;
  int resolution = 64;
  int count = 8;  // eigenpairs for kind=modes
  std::string out_dir = "out";
  std::string cache_dir;
  std::uint64_t seed = 1;
  int threads = 1;

  bool operator==(const ExperimentManifest&) const = default;
};

ExperimentManifest parse_manifest_text(const std::string& text);
ExperimentManifest parse_manifest(const std::string& path);
std::string manifest_to_text(const ExperimentManifest& m);
void write_manifest(const ExperimentManifest& m, const std::string& path);

// %.17g, locale-independent; shared by the CSV emitters for determinism
std::string format_double(double v);

}  // namespace emass

// eigenmass: experiment runner for the spectral mass laboratory.
//
// Subcommands mirror the experiment kinds: modes, mass-scan, exponent,
// supnorm, thm2, rellich, green-check, report.  Each accepts --manifest
// and direct overrides; exit codes distinguish invalid manifest (2),
// solver failure (3), under-resolved experiment / missing inputs (4) and
// I/O failure (5).

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eigenmass/experiments.hpp"
#include "eigenmass/kernels.hpp"
#include "eigenmass/manifest.hpp"

using namespace emass;

namespace {

struct CommonOpts {
  std::string manifest_path;
  std::string out_dir;
  std::string cache_dir;
  int resolution = 0;
  long seed = -1;
  int threads = 0;
  std::vector<std::string> modes;
  std::string domain, bc;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--manifest", o.manifest_path, "manifest file (key = value sections)");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--cache-dir", o.cache_dir, "eigenpair/grid cache directory");
  cmd->add_option("--resolution", o.resolution, "grid resolution");
  cmd->add_option("--seed", o.seed, "deterministic seed");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--mode", o.modes, "mode descriptor, e.g. 'rect 1 1'");
  cmd->add_option("--domain", o.domain, "square|disk|sphere|ball");
  cmd->add_option("--bc", o.bc, "dirichlet|neumann");
}

ExperimentManifest build_manifest(const std::string& kind, const CommonOpts& o) {
  ExperimentManifest m;
  if (!o.manifest_path.empty()) m = parse_manifest(o.manifest_path);
  m.kind = kind;
  if (!o.out_dir.empty()) m.out_dir = o.out_dir;
  if (!o.cache_dir.empty()) m.cache_dir = o.cache_dir;
  if (o.resolution > 0) m.resolution = o.resolution;
  if (o.seed >= 0) m.seed = static_cast<std::uint64_t>(o.seed);
  if (o.threads > 0) m.threads = o.threads;
  if (!o.modes.empty()) m.modes = o.modes;
  if (!o.domain.empty()) m.domain = domain_kind_from_string(o.domain);
  if (!o.bc.empty()) m.bc = bc_from_string(o.bc);
  if (m.cache_dir.empty()) {
    if (const char* env = std::getenv("EIGENMASS_CACHE")) m.cache_dir = env;
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenmass: Laplace eigenfunction small-ball mass laboratory"};
  app.require_subcommand(0, 1);

  const std::vector<std::string> kinds = {"modes",   "mass-scan", "exponent",    "supnorm",
                                          "thm2",    "rellich",   "green-check", "report"};
  std::map<std::string, CommonOpts> opts;
  for (const std::string& k : kinds) {
    CLI::App* sub = app.add_subcommand(k, "run the '" + k + "' experiment");
    add_common(sub, opts[k]);
  }
  bool show_backend = false;
  app.add_flag("--kernel-backend", show_backend, "print the selected SIMD backend and exit");

  CLI11_PARSE(app, argc, argv);

  if (show_backend) {
    std::cout << kernels::active_backend() << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << "a subcommand is required; run with --help\n";
    return 2;
  }

  const std::string kind = app.get_subcommands().front()->get_name();
  try {
    const ExperimentManifest m = build_manifest(kind, opts[kind]);
    const std::vector<std::string> paths = experiments::run_manifest(m);
    for (const std::string& p : paths) std::cout << p << "\n";
    return 0;
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const UnderResolvedError& e) {
    std::cerr << "under-resolved: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

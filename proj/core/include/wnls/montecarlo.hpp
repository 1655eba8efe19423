#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wnls/integrator.hpp"
#include "wnls/noise.hpp"
#include "wnls/stats.hpp"

namespace wnls {

// Run fn(i) for i = 0..n-1 on up to n_threads workers. Work items are
// independent; exceptions are rethrown on the caller thread.
void parallel_for(int n, int n_threads, const std::function<void(int)>& fn);

struct NamedFunctional {
  std::string name;
  std::function<double(const Trajectory&)> fn;
};

struct EnsembleConfig {
  EvolveConfig evolve{};
  DispersionSpec dispersion{};
  int n_paths = 0;
  std::uint64_t root_seed = 0;
  int threads = 1;
};

struct EnsembleStats {
  int n_paths = 0;
  int n_failed = 0;
  std::uint64_t root_seed = 0;
  std::string config_digest;
  WilsonInterval failure;
  // Per-functional samples over non-failed paths, in path-index order, plus
  // the mean with a 95% band. Reduction order is fixed by the path index, so
  // results do not depend on the worker count.
  std::map<std::string, std::vector<double>> samples;
  std::map<std::string, MomentEstimate> mean_estimate;
  std::vector<unsigned> flags_by_path;
  std::vector<double> tau_r_time_by_path;  // NaN when not stopped
};

// Thrown when every path of an ensemble carries a blow-up flag.
struct AllPathsFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evolve n_paths independently seeded trajectories from u0 and reduce the
// named functionals. Paths whose trajectory carries a blow-up flag are
// excluded from the samples and counted in n_failed. Requires n_paths >= 2;
// throws AllPathsFailed if nothing survives.
EnsembleStats run_ensemble(const EnsembleConfig& cfg, const StateField& u0,
                           const std::vector<NamedFunctional>& functionals);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

// Scale of the two-sample 95% KS acceptance band,
// 1.36 sqrt((n_a + n_b) / (n_a n_b)).
double ks_band(size_t n_a, size_t n_b);

std::string describe(const EnsembleConfig& cfg);

}  // namespace wnls

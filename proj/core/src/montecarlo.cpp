#include "wnls/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "wnls/report.hpp"

namespace wnls {

void parallel_for(int n, int n_threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  n_threads = std::max(1, std::min(n_threads, n));
  if (n_threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_threads));
  for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string describe(const EnsembleConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  const auto& e = cfg.evolve;
  os << "T=" << e.t_final << ";dt=" << e.dt
     << ";nl=" << (e.nonlinearity == Nonlinearity::quintic ? "quintic" : "off")
     << ";split=" << (e.splitting == Splitting::strang ? "strang" : "lie")
     << ";halved=" << (e.convention.halved ? 1 : 0);
  if (e.cutoff_R) os << ";R=" << *e.cutoff_R;
  if (e.cutoff_M) os << ";M=" << *e.cutoff_M;
  os << ";dealias=" << (e.dealias_truncate ? 1 : 0);
  os << ";disp=" << static_cast<int>(cfg.dispersion.kind);
  if (cfg.dispersion.kind == PathKind::integrated_stationary) {
    os << ";drv=" << static_cast<int>(cfg.dispersion.driver.kind)
       << ";relax=" << cfg.dispersion.driver.relax_rate
       << ";svar=" << cfg.dispersion.driver.stationary_var << ";eps=" << cfg.dispersion.eps;
  }
  if (cfg.dispersion.kind == PathKind::deterministic) os << ";slope=" << cfg.dispersion.slope;
  os << ";n=" << cfg.n_paths << ";seed=" << cfg.root_seed;
  return os.str();
}

EnsembleStats run_ensemble(const EnsembleConfig& cfg, const StateField& u0,
                           const std::vector<NamedFunctional>& functionals) {
  if (cfg.n_paths < 2) throw std::invalid_argument("run_ensemble: need at least 2 paths");
  const int n_steps = cfg.evolve.steps();
  const int n = cfg.n_paths;

  std::vector<std::vector<double>> values(functionals.size(),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
  std::vector<unsigned> flags(static_cast<size_t>(n), 0u);
  std::vector<double> tau(static_cast<size_t>(n), std::numeric_limits<double>::quiet_NaN());
  std::vector<char> failed(static_cast<size_t>(n), 0);

  parallel_for(n, cfg.threads, [&](int i) {
    const std::uint64_t seed = path_seed(cfg.root_seed, static_cast<std::uint64_t>(i));
    const DispersionPath path = make_path(cfg.dispersion, n_steps, cfg.evolve.dt, seed);
    const Trajectory traj = evolve(cfg.evolve, u0, path);
    flags[static_cast<size_t>(i)] = traj.final_flags;
    if (traj.tau_r_step) {
      tau[static_cast<size_t>(i)] = traj.t[static_cast<size_t>(*traj.tau_r_step)];
    }
    if (traj.failed()) {
      failed[static_cast<size_t>(i)] = 1;
      return;
    }
    for (size_t f = 0; f < functionals.size(); ++f) {
      values[f][static_cast<size_t>(i)] = functionals[f].fn(traj);
    }
  });

  EnsembleStats out;
  out.n_paths = n;
  out.root_seed = cfg.root_seed;
  out.config_digest = hex64(fnv1a64(describe(cfg)));
  out.flags_by_path = std::move(flags);
  out.tau_r_time_by_path = std::move(tau);
  for (int i = 0; i < n; ++i) out.n_failed += failed[static_cast<size_t>(i)];
  out.failure = wilson_interval(out.n_failed, n);
  if (n - out.n_failed < 2) {
    throw AllPathsFailed("run_ensemble: fewer than two paths survive blow-up flags (digest " +
                         out.config_digest + ")");
  }
  for (size_t f = 0; f < functionals.size(); ++f) {
    std::vector<double> kept;
    kept.reserve(static_cast<size_t>(n - out.n_failed));
    for (int i = 0; i < n; ++i) {
      if (!failed[static_cast<size_t>(i)]) kept.push_back(values[f][static_cast<size_t>(i)]);
    }
    out.mean_estimate[functionals[f].name] = moment(kept, 1);
    out.samples[functionals[f].name] = std::move(kept);
  }
  return out;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(ia / na - ib / nb));
  }
  return d;
}

double ks_band(size_t n_a, size_t n_b) {
  const double na = static_cast<double>(n_a), nb = static_cast<double>(n_b);
  return 1.36 * std::sqrt((na + nb) / (na * nb));
}

}  // namespace wnls

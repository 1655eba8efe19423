#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace wnls {

enum class PathKind { brownian, integrated_stationary, deterministic };

// Dispersion time profile sampled on the step grid t_j = j*dt: b[0] = 0 and
// b[j] = b(t_j). The integrator consumes per-step increments b[j+1] - b[j].
struct DispersionPath {
  PathKind kind = PathKind::brownian;
  double dt = 0.0;
  std::vector<double> b;

  int steps() const { return static_cast<int>(b.size()) - 1; }
  double increment(int j) const { return b[j + 1] - b[j]; }
  // Restriction to every factor-th grid point (factor must divide steps()).
  DispersionPath coarsen(int factor) const;
};

// Per-path seeding rule: the path_index-th state of the splitmix64 stream
// seeded at root_seed, used to construct the generator.
std::uint64_t path_seed(std::uint64_t root_seed, std::uint64_t path_index);
std::mt19937_64 make_generator(std::uint64_t seed);

// Standard Brownian motion: independent N(0, dt) increments.
DispersionPath sample_brownian(int n_steps, double dt, std::uint64_t seed);

// b(t) = slope * t.
DispersionPath deterministic_path(int n_steps, double dt, double slope);

struct StationaryDriver {
  enum class Kind { ou, telegraph };
  Kind kind = Kind::ou;
  double relax_rate = 1.0;      // theta
  double stationary_var = 0.5;  // sigma_m^2

  // Effective diffusion 2 sigma_m^2 / theta of the integrated, rescaled drive.
  double d_eff() const { return 2.0 * stationary_var / relax_rate; }
};

// Stationary, exponentially mixing scalar drive m(s_i), s_i = i*ds,
// i = 0..n_samples-1, started from the stationary law. The OU kind uses the
// exact one-step update; the telegraph kind flips sign with the exact
// odd-flip-count probability. Requires ds * relax_rate <= 0.1.
std::vector<double> sample_stationary(const StationaryDriver& drv, int n_samples,
                                      double ds, std::uint64_t seed);

// n(t_j) = eps * \int_0^{t_j/eps^2} m(s) ds via the trapezoid rule on the fine
// grid ds = dt_coarse/eps^2; m must hold J+1 samples for J coarse steps.
DispersionPath integrated_dispersion(const std::vector<double>& m, double eps,
                                     double dt_coarse);

// Convenience: sample the drive and integrate it in one call.
DispersionPath sample_integrated_dispersion(const StationaryDriver& drv, int n_steps,
                                            double dt_coarse, double eps,
                                            std::uint64_t seed);

// Recipe for drawing per-path dispersion profiles.
struct DispersionSpec {
  PathKind kind = PathKind::brownian;
  StationaryDriver driver{};  // integrated_stationary
  double eps = 0.1;           // integrated_stationary scaling
  double slope = 1.0;         // deterministic b(t) = slope * t
};

DispersionPath make_path(const DispersionSpec& spec, int n_steps, double dt,
                         std::uint64_t seed);

// CSV with columns t,value.
void export_path_csv(const DispersionPath& path, const std::string& filename);

}  // namespace wnls

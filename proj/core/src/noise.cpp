#include "wnls/noise.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wnls {

DispersionPath DispersionPath::coarsen(int factor) const {
  if (factor < 1 || steps() % factor != 0) {
    throw std::invalid_argument("coarsen: factor must divide the step count");
  }
  DispersionPath out;
  out.kind = kind;
  out.dt = dt * factor;
  out.b.reserve(steps() / factor + 1);
  for (int j = 0; j <= steps(); j += factor) out.b.push_back(b[j]);
  return out;
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_steps(int n_steps, double dt, const char* who) {
  if (n_steps < 1) throw std::invalid_argument(std::string(who) + ": need at least one step");
  if (!(dt > 0.0)) throw std::invalid_argument(std::string(who) + ": dt must be positive");
}
}  // namespace

std::uint64_t path_seed(std::uint64_t root_seed, std::uint64_t path_index) {
  // Index-th state of the splitmix64 stream seeded at root_seed. A plain
  // root XOR index would collide for pairs like (42, 1) and (43, 0).
  return splitmix64(root_seed + 0x9E3779B97F4A7C15ULL * path_index);
}

std::mt19937_64 make_generator(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

DispersionPath sample_brownian(int n_steps, double dt, std::uint64_t seed) {
  check_steps(n_steps, dt, "sample_brownian");
  auto gen = make_generator(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DispersionPath p;
  p.kind = PathKind::brownian;
  p.dt = dt;
  p.b.resize(n_steps + 1);
  p.b[0] = 0.0;
  const double s = std::sqrt(dt);
  for (int j = 0; j < n_steps; ++j) p.b[j + 1] = p.b[j] + s * gauss(gen);
  return p;
}

DispersionPath deterministic_path(int n_steps, double dt, double slope) {
  check_steps(n_steps, dt, "deterministic_path");
  DispersionPath p;
  p.kind = PathKind::deterministic;
  p.dt = dt;
  p.b.resize(n_steps + 1);
  for (int j = 0; j <= n_steps; ++j) p.b[j] = slope * (j * dt);
  return p;
}

std::vector<double> sample_stationary(const StationaryDriver& drv, int n_samples,
                                      double ds, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("sample_stationary: need samples");
  if (!(ds > 0.0)) throw std::invalid_argument("sample_stationary: ds must be positive");
  if (!(drv.relax_rate > 0.0)) {
    throw std::invalid_argument("sample_stationary: relax_rate must be positive");
  }
  if (!(drv.stationary_var >= 0.0)) {
    throw std::invalid_argument("sample_stationary: stationary_var must be >= 0");
  }
  if (ds * drv.relax_rate > 0.1) {
    throw std::invalid_argument(
        "sample_stationary: under-resolved correlation time (ds * relax_rate > 0.1)");
  }
  auto gen = make_generator(seed);
  std::vector<double> m(n_samples);
  if (drv.stationary_var == 0.0) {
    return m;  // zero drive
  }
  const double sigma = std::sqrt(drv.stationary_var);
  if (drv.kind == StationaryDriver::Kind::ou) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double a = std::exp(-drv.relax_rate * ds);
    const double q = sigma * std::sqrt(1.0 - a * a);
    m[0] = sigma * gauss(gen);
    for (int i = 1; i < n_samples; ++i) m[i] = a * m[i - 1] + q * gauss(gen);
  } else {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double p_flip = 0.5 * (1.0 - std::exp(-drv.relax_rate * ds));
    double state = (unif(gen) < 0.5) ? sigma : -sigma;
    m[0] = state;
    for (int i = 1; i < n_samples; ++i) {
      if (unif(gen) < p_flip) state = -state;
      m[i] = state;
    }
  }
  return m;
}

DispersionPath integrated_dispersion(const std::vector<double>& m, double eps,
                                     double dt_coarse) {
  if (!(eps > 0.0)) throw std::invalid_argument("integrated_dispersion: eps must be positive");
  if (!(dt_coarse > 0.0)) {
    throw std::invalid_argument("integrated_dispersion: dt must be positive");
  }
  if (m.size() < 2) {
    throw std::invalid_argument("integrated_dispersion: fine grid does not cover the horizon");
  }
  const int n_steps = static_cast<int>(m.size()) - 1;
  const double ds = dt_coarse / (eps * eps);
  DispersionPath p;
  p.kind = PathKind::integrated_stationary;
  p.dt = dt_coarse;
  p.b.resize(n_steps + 1);
  p.b[0] = 0.0;
  double acc = 0.0;
  for (int j = 1; j <= n_steps; ++j) {
    acc += 0.5 * (m[j - 1] + m[j]) * ds;
    p.b[j] = eps * acc;
  }
  return p;
}

DispersionPath sample_integrated_dispersion(const StationaryDriver& drv, int n_steps,
                                            double dt_coarse, double eps,
                                            std::uint64_t seed) {
  check_steps(n_steps, dt_coarse, "sample_integrated_dispersion");
  const double ds = dt_coarse / (eps * eps);
  auto m = sample_stationary(drv, n_steps + 1, ds, seed);
  return integrated_dispersion(m, eps, dt_coarse);
}

DispersionPath make_path(const DispersionSpec& spec, int n_steps, double dt,
                         std::uint64_t seed) {
  switch (spec.kind) {
    case PathKind::brownian:
      return sample_brownian(n_steps, dt, seed);
    case PathKind::integrated_stationary:
      return sample_integrated_dispersion(spec.driver, n_steps, dt, spec.eps, seed);
    case PathKind::deterministic:
      return deterministic_path(n_steps, dt, spec.slope);
  }
  throw std::invalid_argument("make_path: unknown path kind");
}

void export_path_csv(const DispersionPath& path, const std::string& filename) {
  std::FILE* fp = std::fopen(filename.c_str(), "w");
  if (!fp) throw std::runtime_error("export_path_csv: cannot open " + filename);
  std::fprintf(fp, "t,value\n");
  for (size_t j = 0; j < path.b.size(); ++j) {
    std::fprintf(fp, "%.17g,%.17g\n", static_cast<double>(j) * path.dt, path.b[j]);
  }
  std::fclose(fp);
}

}  // namespace wnls

#include "wnls/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "wnls/fft.hpp"
#include "wnls/spectral.hpp"

namespace wnls {

namespace {
int window_steps(double T, double dt, const char* who) {
  const double r = T / dt;
  const double j = std::round(r);
  if (j < 1.0 || std::abs(r - j) > 1e-9 * std::max(1.0, r)) {
    throw std::invalid_argument(std::string(who) + ": horizon must align with the step grid");
  }
  return static_cast<int>(j);
}
}  // namespace

double smoothing_functional(const SourceSeries& f, const DispersionPath& path, double T,
                            PropagatorConvention conv) {
  if (!(f.dt() > 0.0) || std::abs(path.dt - f.dt()) > 1e-9 * f.dt()) {
    throw std::invalid_argument("smoothing_functional: path and source step sizes differ");
  }
  const int n_t = window_steps(T, f.dt(), "smoothing_functional");
  if (path.steps() < n_t - 1 || f.steps() < n_t - 1) {
    throw std::invalid_argument("smoothing_functional: path or source does not cover [0, T)");
  }
  const auto& g = *f.grid_ptr();
  const int n = g.n_points;
  Dft& engine = dft_for(n);
  const double c = conv.factor();
  const double dt = f.dt();
  const double wgt = 1.0 / (2.0 * g.half_width);

  std::vector<Complex> acc(n, Complex(0.0, 0.0));
  std::vector<Complex> vhat(n), tmp(n), v(n), w2hat(n);
  double total = 0.0;
  for (int t = 0; t < n_t; ++t) {
    if (t >= 1) {
      const double b_prev = path.b[t - 1];
      const auto& src = f.spectral_at(t - 1).values();
      for (int k = 0; k < n; ++k) {
        const double xi = g.freq[k];
        acc[k] += std::polar(dt, c * xi * xi * b_prev) * src[k];
      }
    }
    const double b_t = path.b[t];
    const double inv2L = 1.0 / (2.0 * g.half_width);
    for (int k = 0; k < n; ++k) {
      const double xi = g.freq[k];
      const Complex z = std::polar(1.0, -c * xi * xi * b_t) * acc[k];
      tmp[k] = z * ((k & 1) ? -inv2L : inv2L);
    }
    engine.backward(tmp.data(), v.data());
    for (int j = 0; j < n; ++j) v[j] = Complex(std::norm(v[j]), 0.0);
    engine.forward(v.data(), w2hat.data());
    double val = 0.0;
    for (int k = 0; k < n; ++k) {
      const double w = (k & 1) ? -g.dx : g.dx;
      val += std::abs(g.freq[k]) * std::norm(w2hat[k] * w);
    }
    total += val * wgt * dt;
  }
  return total;
}

double rhs_l1l2_norm(const SourceSeries& f, double T) {
  const int n_t = window_steps(T, f.dt(), "rhs_l1l2_norm");
  if (f.steps() < n_t - 1) {
    throw std::invalid_argument("rhs_l1l2_norm: source does not cover [0, T)");
  }
  const auto& g = *f.grid_ptr();
  const double wgt = 1.0 / (2.0 * g.half_width);
  double total = 0.0;
  for (int j = 0; j < n_t; ++j) {
    const auto& src = f.spectral_at(j).values();
    double m = 0.0;
    for (const auto& z : src) m += std::norm(z);
    total += std::sqrt(m * wgt) * f.dt();
  }
  return total;
}

double homogeneous_strichartz_sample(const StateField& u0, const DispersionPath& path,
                                     double T, PropagatorConvention conv) {
  const int n_t = window_steps(T, path.dt, "homogeneous_strichartz_sample");
  if (path.steps() < n_t) {
    throw std::invalid_argument("homogeneous_strichartz_sample: path does not cover [0, T]");
  }
  DispersionPath sub = path;
  sub.b.resize(n_t + 1);
  EvolveConfig cfg;
  cfg.t_final = T;
  cfg.dt = path.dt;
  cfg.nonlinearity = Nonlinearity::off;
  cfg.convention = conv;
  Trajectory traj = evolve(cfg, u0, sub);
  return spacetime_norm(traj, 5.0, 10.0, 0.0, T);
}

StoppingStats stopping_statistics(const std::vector<Trajectory>& trajs, double R, double T) {
  if (trajs.empty()) throw std::invalid_argument("stopping_statistics: empty trajectory set");
  StoppingStats out;
  int n_ok = 0, n_stop = 0;
  for (const auto& tr : trajs) {
    if (!tr.cutoff_R || std::abs(*tr.cutoff_R - R) > 1e-12 * std::max(1.0, std::abs(R))) {
      throw std::invalid_argument(
          "stopping_statistics: trajectory set mixes truncation scales");
    }
    if (tr.failed()) {
      ++out.n_failed;
      continue;
    }
    ++n_ok;
    if (tr.tau_r_step && tr.t[static_cast<size_t>(*tr.tau_r_step)] <= T + 1e-12) ++n_stop;
  }
  if (n_ok == 0) throw std::runtime_error("stopping_statistics: all paths failed");
  out.stopped = wilson_interval(n_stop, n_ok);
  return out;
}

}  // namespace wnls

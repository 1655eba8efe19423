#include "wnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wnls/fft.hpp"

namespace wnls {

StateField transform(const StateField& f, Direction dir) {
  const auto& g = f.grid();
  const int n = g.n_points;
  Dft& engine = dft_for(n);
  if (dir == Direction::forward) {
    if (f.rep() != Rep::physical) {
      throw std::invalid_argument("transform: forward expects physical input");
    }
    StateField out(f.grid_ptr(), Rep::spectral);
    engine.forward(f.values().data(), out.values().data());
    // Nodes start at -L, which contributes a (-1)^k phase relative to the
    // index-0-based DFT; dx turns the sum into the integral approximation.
    for (int k = 0; k < n; ++k) {
      const double w = (k & 1) ? -g.dx : g.dx;
      out.values()[k] *= w;
    }
    return out;
  }
  if (f.rep() != Rep::spectral) {
    throw std::invalid_argument("transform: backward expects spectral input");
  }
  StateField tmp(f.grid_ptr(), Rep::spectral, f.values());
  const double s = 1.0 / (2.0 * g.half_width);
  for (int k = 0; k < n; ++k) {
    const double w = (k & 1) ? -s : s;
    tmp.values()[k] *= w;
  }
  StateField out(f.grid_ptr(), Rep::physical);
  engine.backward(tmp.values().data(), out.values().data());
  return out;
}

StateField to_physical(const StateField& f) {
  return f.rep() == Rep::physical ? f : transform(f, Direction::backward);
}

StateField to_spectral(const StateField& f) {
  return f.rep() == Rep::spectral ? f : transform(f, Direction::forward);
}

StateField fractional_derivative(const StateField& f, double s) {
  if (!(s >= 0.0)) {
    throw std::invalid_argument("fractional_derivative: order must be >= 0");
  }
  if (s == 0.0) return f;
  const Rep orig = f.rep();
  StateField spec = to_spectral(f);
  const auto& freq = spec.grid().freq;
  for (int k = 0; k < spec.size(); ++k) {
    spec.values()[k] *= std::pow(std::abs(freq[k]), s);
  }
  return orig == Rep::spectral ? spec : transform(spec, Direction::backward);
}

double lp_norm(const StateField& f, double p) {
  if (f.rep() != Rep::physical) {
    throw std::invalid_argument("lp_norm: physical representation required");
  }
  if (p == kPInf) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const double dx = f.grid().dx;
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& v : f.values()) acc += std::norm(v);
  } else {
    for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
  }
  return std::pow(acc * dx, 1.0 / p);
}

double sobolev_norm(const StateField& f, double s) {
  StateField spec = to_spectral(f);
  const auto& g = spec.grid();
  const double w = 1.0 / (2.0 * g.half_width);  // dxi/2pi
  double acc = 0.0;
  for (int k = 0; k < spec.size(); ++k) {
    const double xi2 = g.freq[k] * g.freq[k];
    acc += std::pow(1.0 + xi2, s) * std::norm(spec.values()[k]) * w;
  }
  return std::sqrt(acc);
}

double spectral_band_fraction(const StateField& f) {
  StateField spec = to_spectral(f);
  const auto& g = spec.grid();
  const double cut = (2.0 / 3.0) * g.freq_max() * (1.0 - 1e-12);
  double total = 0.0, band = 0.0;
  for (int k = 0; k < spec.size(); ++k) {
    const double m = std::norm(spec.values()[k]);
    total += m;
    if (std::abs(g.freq[k]) >= cut) band += m;
  }
  return total > 0.0 ? band / total : 0.0;
}

double boundary_mass_fraction(const StateField& f) {
  if (f.rep() != Rep::physical) {
    throw std::invalid_argument("boundary_mass_fraction: physical representation required");
  }
  const auto& g = f.grid();
  const double cut = 0.75 * g.half_width;
  double total = 0.0, edge = 0.0;
  for (int j = 0; j < f.size(); ++j) {
    const double m = std::norm(f.values()[j]);
    total += m;
    if (std::abs(g.nodes[j]) >= cut) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

namespace {
int window_index(double t, double dt, const char* what) {
  const double r = t / dt;
  const double j = std::round(r);
  if (std::abs(r - j) > 1e-6) {
    throw std::invalid_argument(std::string("spacetime_norm: ") + what +
                                " does not align with the step grid");
  }
  return static_cast<int>(j);
}
}  // namespace

double spacetime_norm(const std::vector<double>& step_norms, double dt, double r,
                      double t_a, double t_b) {
  if (!(dt > 0.0)) throw std::invalid_argument("spacetime_norm: dt must be positive");
  if (!(r >= 1.0) || r == kPInf) {
    throw std::invalid_argument("spacetime_norm: time exponent must be finite, >= 1");
  }
  const int ja = window_index(t_a, dt, "window start");
  const int jb = window_index(t_b, dt, "window end");
  if (ja < 0 || jb <= ja || jb > static_cast<int>(step_norms.size())) {
    throw std::invalid_argument("spacetime_norm: empty or out-of-range window");
  }
  double acc = 0.0;
  for (int j = ja; j < jb; ++j) acc += std::pow(step_norms[j], r) * dt;
  return std::pow(acc, 1.0 / r);
}

}  // namespace wnls

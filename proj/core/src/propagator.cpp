#include "wnls/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "wnls/spectral.hpp"

namespace wnls {

void apply_linear_inplace(std::vector<Complex>& spec, const SpatialGrid& grid,
                          double db, PropagatorConvention conv) {
  const double c = conv.factor() * db;
  const int n = grid.n_points;
  for (int k = 0; k < n; ++k) {
    const double xi = grid.freq[k];
    spec[k] *= std::polar(1.0, -xi * xi * c);
  }
}

StateField apply_linear(const StateField& f, double db, PropagatorConvention conv) {
  const Rep orig = f.rep();
  StateField spec = to_spectral(f);
  apply_linear_inplace(spec.values(), spec.grid(), db, conv);
  return orig == Rep::spectral ? spec : transform(spec, Direction::backward);
}

StateField apply_smooth_dispersion(const StateField& f, double n_increment,
                                   PropagatorConvention conv) {
  return apply_linear(f, n_increment, conv);
}

StateField kernel_apply(const StateField& f, double db, const KernelOptions& opt) {
  if (f.rep() != Rep::physical) {
    throw std::invalid_argument("kernel_apply: physical representation required");
  }
  if (std::abs(db) < opt.min_increment) {
    throw std::invalid_argument("kernel_apply: |db| below the quadrature floor");
  }
  const auto& g = f.grid();
  const double L = g.half_width;
  // Largest kernel phase rate over the box is |x - y| / (2|db|) <= L / |db|;
  // keep the phase advance per quadrature step below opt.max_phase_step.
  const double dy_max = opt.max_phase_step * std::abs(db) / L;
  int m = g.n_points;
  while (2.0 * L / m > dy_max) {
    m *= 2;
    if (m > opt.max_quadrature_points) {
      throw std::invalid_argument("kernel_apply: quadrature would exceed the point cap");
    }
  }

  // Refine u_s to the quadrature grid by spectral zero padding.
  StateField spec = to_spectral(f);
  GridPtr fine = make_grid(L, m);
  StateField fine_spec(fine, Rep::spectral);
  const int n = g.n_points;
  for (int k = 0; k < n; ++k) {
    const int src = k;                       // storage order: 0..N/2-1, -N/2..-1
    const int dst = (k < n / 2) ? k : m - (n - k);
    fine_spec.values()[dst] = spec.values()[src];
  }
  StateField fine_phys = to_physical(fine_spec);

  const Complex pref = 1.0 / std::sqrt(Complex(0.0, 4.0 * M_PI * db));
  const double dy = fine->dx;
  const double inv4b = 1.0 / (4.0 * db);
  StateField out(f.grid_ptr(), Rep::physical);
  for (int j = 0; j < n; ++j) {
    const double x = g.nodes[j];
    Complex acc(0.0, 0.0);
    for (int i = 0; i < m; ++i) {
      const double d = x - fine->nodes[i];
      acc += std::polar(1.0, d * d * inv4b) * fine_phys.values()[i];
    }
    out.values()[j] = pref * acc * dy;
  }
  return out;
}

SourceSeries SourceSeries::constant(const StateField& field, int n_steps, double dt) {
  if (n_steps < 1) throw std::invalid_argument("SourceSeries: need at least one step");
  if (!(dt > 0.0)) throw std::invalid_argument("SourceSeries: dt must be positive");
  SourceSeries s;
  s.constant_ = true;
  s.n_steps_ = n_steps;
  s.dt_ = dt;
  s.fields_.push_back(to_spectral(field));
  return s;
}

SourceSeries SourceSeries::from_fields(const std::vector<StateField>& fields, double dt) {
  if (fields.size() < 2) {
    throw std::invalid_argument("SourceSeries: need fields at steps 0..J, J >= 1");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("SourceSeries: dt must be positive");
  SourceSeries s;
  s.constant_ = false;
  s.n_steps_ = static_cast<int>(fields.size()) - 1;
  s.dt_ = dt;
  s.fields_.reserve(fields.size());
  for (const auto& f : fields) {
    if (!f.grid().same_as(fields.front().grid())) {
      throw std::invalid_argument("SourceSeries: fields on mismatched grids");
    }
    s.fields_.push_back(to_spectral(f));
  }
  return s;
}

const StateField& SourceSeries::spectral_at(int j) const {
  if (j < 0 || j > n_steps_) throw std::out_of_range("SourceSeries: step index");
  return constant_ ? fields_.front() : fields_[static_cast<size_t>(j)];
}

const GridPtr& SourceSeries::grid_ptr() const { return fields_.front().grid_ptr(); }

StateField duhamel_integral(const SourceSeries& f, const DispersionPath& path, int m,
                            PropagatorConvention conv) {
  if (m < 0 || m > path.steps() || m > f.steps()) {
    throw std::invalid_argument("duhamel_integral: step index out of range");
  }
  if (std::abs(path.dt - f.dt()) > 1e-9 * f.dt()) {
    throw std::invalid_argument("duhamel_integral: path and source step sizes differ");
  }
  const auto& grid = *f.grid_ptr();
  StateField acc(f.grid_ptr(), Rep::spectral);
  const double c = conv.factor();
  const int n = grid.n_points;
  for (int j = 0; j < m; ++j) {
    const double db = path.b[m] - path.b[j];
    const auto& src = f.spectral_at(j).values();
    auto& a = acc.values();
    for (int k = 0; k < n; ++k) {
      const double xi = grid.freq[k];
      a[k] += std::polar(f.dt(), -xi * xi * db * c) * src[k];
    }
  }
  return transform(acc, Direction::backward);
}

}  // namespace wnls

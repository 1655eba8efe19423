#pragma once

#include <cmath>
#include <vector>

#include "wnls/field.hpp"
#include "wnls/noise.hpp"

namespace wnls {

// Multiplier convention for the dispersion group: e^{-i xi^2 db} by default,
// e^{-i xi^2 db / 2} when halved is set.
struct PropagatorConvention {
  bool halved = false;
  double factor() const { return halved ? 0.5 : 1.0; }
};

// Exact one-shot linear update by a dispersion increment db (any real value).
// Unitary on every Sobolev level; accepts either representation and returns
// the same one.
StateField apply_linear(const StateField& f, double db, PropagatorConvention conv = {});

// In-place spectral fast path used by the integrator and sweep loops.
void apply_linear_inplace(std::vector<Complex>& spec, const SpatialGrid& grid,
                          double db, PropagatorConvention conv = {});

// Same update driven by a smooth integrated-dispersion increment.
StateField apply_smooth_dispersion(const StateField& f, double n_increment,
                                   PropagatorConvention conv = {});

struct KernelOptions {
  double min_increment = 1e-3;        // |db| below this is rejected
  double max_phase_step = M_PI / 8.0; // kernel phase advance per quadrature step at the box edge
  int max_quadrature_points = 1 << 20;
};

// Oscillatory-kernel form of the same update,
//   u(x) = (4 i pi db)^{-1/2} \int e^{i (x-y)^2 / (4 db)} u_s(y) dy,
// with the principal square-root branch, evaluated by direct quadrature on a
// refined grid (trigonometric interpolation of u_s). Physical rep in and out.
// Only meaningful for the unhalved convention and |db| >= min_increment.
StateField kernel_apply(const StateField& f, double db, const KernelOptions& opt = {});

// Source samples f(t_j) on a uniform step grid, j = 0..steps(). Stored
// spectrally; either constant in time or a per-step list.
class SourceSeries {
 public:
  static SourceSeries constant(const StateField& field, int n_steps, double dt);
  static SourceSeries from_fields(const std::vector<StateField>& fields, double dt);

  int steps() const { return n_steps_; }
  double dt() const { return dt_; }
  bool is_constant() const { return constant_; }
  const StateField& spectral_at(int j) const;
  const GridPtr& grid_ptr() const;

 private:
  bool constant_ = true;
  int n_steps_ = 0;
  double dt_ = 0.0;
  std::vector<StateField> fields_;
};

// Left-endpoint discretization of the driven accumulation
// \int_0^{t_m} S(t_m, s) f(s) ds: sum_{j<m} apply_linear(f_j, b_m - b_j) dt,
// computed by direct summation. Physical representation out. m = 0 gives the
// zero field.
StateField duhamel_integral(const SourceSeries& f, const DispersionPath& path, int m,
                            PropagatorConvention conv = {});

}  // namespace wnls

#pragma once

#include <complex>
#include <vector>

#include "wnls/grid.hpp"

namespace wnls {

using Complex = std::complex<double>;

enum class Rep { physical, spectral };

// Complex field on a SpatialGrid, tagged with its current representation.
// Physical values are samples u(x_j); spectral values approximate the
// continuum transform uhat(xi_k) = \int u(x) e^{-i xi_k x} dx.
class StateField {
 public:
  StateField() = default;
  StateField(GridPtr grid, Rep rep)
      : grid_(std::move(grid)), rep_(rep), v_(grid_->n_points, Complex(0.0, 0.0)) {}
  StateField(GridPtr grid, Rep rep, std::vector<Complex> values);

  const SpatialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Rep rep() const { return rep_; }
  int size() const { return grid_ ? grid_->n_points : 0; }

  std::vector<Complex>& values() { return v_; }
  const std::vector<Complex>& values() const { return v_; }

 private:
  GridPtr grid_;
  Rep rep_ = Rep::physical;
  std::vector<Complex> v_;
};

// Initial data builders (physical representation).
StateField make_gaussian(const GridPtr& grid, double amplitude, double width,
                         double center = 0.0);
// amplitude * sech(x/width)^(1/2)
StateField make_soliton_like(const GridPtr& grid, double amplitude, double width);
// e^{i xi_k x} for integer mode index k in [-N/2, N/2)
StateField make_mode(const GridPtr& grid, int k);

}  // namespace wnls

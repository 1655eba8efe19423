#include "wnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace wnls {

StateField::StateField(GridPtr grid, Rep rep, std::vector<Complex> values)
    : grid_(std::move(grid)), rep_(rep), v_(std::move(values)) {
  if (static_cast<int>(v_.size()) != grid_->n_points) {
    throw std::invalid_argument("StateField: value count does not match grid");
  }
}

StateField make_gaussian(const GridPtr& grid, double amplitude, double width,
                         double center) {
  if (!(width > 0.0)) throw std::invalid_argument("make_gaussian: width must be positive");
  StateField f(grid, Rep::physical);
  for (int j = 0; j < grid->n_points; ++j) {
    const double y = (grid->nodes[j] - center) / width;
    f.values()[j] = Complex(amplitude * std::exp(-y * y), 0.0);
  }
  return f;
}

StateField make_soliton_like(const GridPtr& grid, double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("make_soliton_like: width must be positive");
  StateField f(grid, Rep::physical);
  for (int j = 0; j < grid->n_points; ++j) {
    const double y = grid->nodes[j] / width;
    f.values()[j] = Complex(amplitude / std::sqrt(std::cosh(y)), 0.0);
  }
  return f;
}

StateField make_mode(const GridPtr& grid, int k) {
  if (k < -grid->n_points / 2 || k >= grid->n_points / 2) {
    throw std::invalid_argument("make_mode: mode index out of range");
  }
  StateField f(grid, Rep::physical);
  const double xi = grid->freq_spacing() * k;
  for (int j = 0; j < grid->n_points; ++j) {
    f.values()[j] = std::polar(1.0, xi * grid->nodes[j]);
  }
  return f;
}

}  // namespace wnls

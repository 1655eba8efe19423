#include "wnls/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace wnls {

double SpatialGrid::freq_spacing() const {
  return M_PI / half_width;
}

bool SpatialGrid::same_as(const SpatialGrid& other) const {
  return n_points == other.n_points && half_width == other.half_width;
}

GridPtr make_grid(double half_width, int n_points) {
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("make_grid: half_width must be positive");
  }
  if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
    throw std::invalid_argument("make_grid: n_points must be a power of two, >= 8");
  }
  auto g = std::make_shared<SpatialGrid>();
  g->half_width = half_width;
  g->n_points = n_points;
  g->dx = 2.0 * half_width / n_points;
  g->nodes.resize(n_points);
  g->freq.resize(n_points);
  const double dxi = M_PI / half_width;
  for (int j = 0; j < n_points; ++j) {
    g->nodes[j] = -half_width + j * g->dx;
    const int k = (j < n_points / 2) ? j : j - n_points;
    g->freq[j] = dxi * k;
  }
  return g;
}

}  // namespace wnls

#pragma once

#include <memory>
#include <vector>

namespace wnls {

// Uniform periodic grid on [-L, L) with N nodes, N a power of two.
//
// Nodes:        x_j  = -L + j*dx,  dx = 2L/N,  j = 0..N-1
// Frequencies:  xi_k = pi*k/L,     k = 0..N/2-1, -N/2..-1  (FFT storage order)
struct SpatialGrid {
  double half_width = 0.0;  // L
  int n_points = 0;         // N
  double dx = 0.0;
  std::vector<double> nodes;
  std::vector<double> freq;

  double freq_max() const { return freq_spacing() * (n_points / 2); }
  double freq_spacing() const;  // pi/L
  bool same_as(const SpatialGrid& other) const;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

// Throws std::invalid_argument unless L > 0, N >= 8 and N is a power of two.
GridPtr make_grid(double half_width, int n_points);

}  // namespace wnls

#pragma once

#include <limits>
#include <vector>

#include "wnls/field.hpp"

namespace wnls {

enum class Direction { forward, backward };

inline constexpr double kPInf = std::numeric_limits<double>::infinity();

// Discrete counterpart of uhat(xi) = \int u e^{-i xi x} dx and of the inverse
// u(x) = (1/2pi) \int uhat e^{i xi x} dxi. The pair is unitary between the
// dx-weighted physical values and the (dxi/2pi)-weighted spectral values, so
// the Plancherel identity holds on the grid. Throws on a representation
// mismatch (forward needs physical input, backward spectral input).
StateField transform(const StateField& f, Direction dir);

// Convenience: transform only if needed.
StateField to_physical(const StateField& f);
StateField to_spectral(const StateField& f);

// |D|^s: multiplication by |xi|^s in the spectral representation. s >= 0.
// Result is returned in the representation of the input. s = 0 is the
// identity (the xi = 0 mode is untouched).
StateField fractional_derivative(const StateField& f, double s);

// (sum |u_j|^p dx)^(1/p) for p in [1, inf); max_j |u_j| for p = inf.
// Requires physical representation.
double lp_norm(const StateField& f, double p);

// (sum (1 + xi^2)^s |uhat_k|^2 dxi/2pi)^(1/2); accepts either representation.
double sobolev_norm(const StateField& f, double s);

// Fraction of spectral mass carried by modes with |xi| >= (2/3) xi_max.
double spectral_band_fraction(const StateField& f);

// Fraction of physical mass within distance L/4 of the box boundary.
double boundary_mass_fraction(const StateField& f);

// Left-endpoint-in-time L^r norm over the window [t_a, t_b):
// ( sum_{t_j in [t_a, t_b)} step_norms[j]^r dt )^(1/r), step_norms[j] being a
// spatial norm at t_j = j*dt. Window endpoints must align with the step grid;
// an empty window is an error. r in [1, inf).
double spacetime_norm(const std::vector<double>& step_norms, double dt, double r,
                      double t_a, double t_b);

}  // namespace wnls

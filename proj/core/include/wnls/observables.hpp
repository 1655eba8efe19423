#pragma once

#include <vector>

#include "wnls/integrator.hpp"
#include "wnls/propagator.hpp"
#include "wnls/stats.hpp"

namespace wnls {

// Left-endpoint discretization of the driven-accumulation smoothing
// functional over [0, T):
//   sum_{t_j} || |D|^{1/2} ( |v(t_j)|^2 ) ||_{L2}^2 dt,
// where v(t_j) is the duhamel_integral of f along the path. Evaluated with an
// incremental spectral accumulator, algebraically identical to the direct
// per-step summation.
double smoothing_functional(const SourceSeries& f, const DispersionPath& path, double T,
                            PropagatorConvention conv = {});

// Left-endpoint time integral of the source's spatial L2 norm over [0, T).
double rhs_l1l2_norm(const SourceSeries& f, double T);

// L5-in-time, L10-in-space norm over [0, T) of the free flow from u0 along
// the path (no nonlinearity).
double homogeneous_strichartz_sample(const StateField& u0, const DispersionPath& path,
                                     double T, PropagatorConvention conv = {});

struct StoppingStats {
  WilsonInterval stopped;   // paths whose running norm reached R by T
  int n_failed = 0;         // blow-up-flagged paths, excluded from the count
};

// Fraction of trajectories with tau_R <= T. All trajectories must carry the
// same truncation scale R; mixed-config sets are rejected.
StoppingStats stopping_statistics(const std::vector<Trajectory>& trajs, double R, double T);

}  // namespace wnls

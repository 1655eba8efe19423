#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wnls/field.hpp"
#include "wnls/noise.hpp"
#include "wnls/propagator.hpp"

namespace wnls {

enum class Splitting { lie, strang };
enum class Nonlinearity { quintic, off };

enum TrajectoryFlag : unsigned {
  kFlagNone = 0u,
  kFlagTauR = 1u << 0,             // running L5L10 norm first reached R
  kFlagMThreshold = 1u << 1,       // sup norm first reached the pointwise cutoff level
  kFlagBlowupLinf = 1u << 2,       // sup norm exceeded blowup_linf_factor x initial
  kFlagBlowupResolution = 1u << 3, // top spectral band carries too much mass
  kFlagBlowupNumerical = 1u << 4,  // non-finite values
};

std::string flag_string(unsigned mask);

struct EvolveConfig {
  double t_final = 1.0;
  double dt = 1e-3;
  Nonlinearity nonlinearity = Nonlinearity::quintic;
  Splitting splitting = Splitting::strang;
  PropagatorConvention convention{};
  std::optional<double> cutoff_R;  // running-norm truncation scale
  std::optional<double> cutoff_M;  // pointwise truncation level
  int save_stride = 0;             // 0: keep only initial and final fields
  bool dealias_truncate = false;   // zero modes with |k| > N/6 after the nonlinear substep
  double blowup_linf_factor = 25.0;
  double blowup_band_fraction = 1e-4;

  // Step count T/dt; throws unless dt divides T to 1e-9 relative.
  int steps() const;
};

// Per-step records plus terminal state. Blow-up flags stop the stepping, so
// the record vectors may end before t_final; the tau_R and M-threshold flags
// are informational and stepping continues.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> t, l2, h1, linf, l10, running_l5l10, theta_scale;
  std::vector<double> band_fraction, boundary_fraction;
  std::vector<double> dispersion;  // b(t_j) echoed from the driving path
  std::vector<unsigned> flags;     // cumulative mask at each step
  std::optional<int> tau_r_step;
  std::optional<int> m_threshold_step;
  std::optional<int> blowup_step;
  std::optional<double> cutoff_R;  // config echo
  std::optional<double> cutoff_M;
  unsigned final_flags = 0u;
  StateField initial;
  StateField final_state;
  std::vector<std::pair<int, StateField>> snapshots;

  int last_step() const { return static_cast<int>(t.size()) - 1; }
  bool failed() const {
    return (final_flags & (kFlagBlowupLinf | kFlagBlowupResolution | kFlagBlowupNumerical)) != 0u;
  }
};

// Smooth plateau cutoff: exactly 1 on [0,1], exactly 0 on [2,inf), smooth and
// nonincreasing in between; theta(1.5) = 1/2. Negative arguments throw.
double cutoff_theta(double x);

// Exact flow of i u_t + scale * |u|^4 u = 0 over dt: a pointwise phase
// rotation by scale * |u|^4 * dt. Physical representation required.
StateField nonlinear_phase_step(const StateField& f, double dt, double scale);

// Same with the pointwise plateau factor theta(|u|^2 / m_level) inside the
// exponent.
StateField nonlinear_phase_step_pointwise(const StateField& f, double dt, double m_level);

// One Strang step: half linear (db/2), nonlinear phase (dt, scale), half
// linear (db/2). Physical representation in and out.
StateField strang_step(const StateField& f, double db, double dt, double scale,
                       PropagatorConvention conv = {});

// Split-step integration of the quintic equation driven by the given
// dispersion path. The path must carry exactly cfg.steps() increments at
// cfg.dt. At most one of cutoff_R / cutoff_M may be set.
Trajectory evolve(const EvolveConfig& cfg, const StateField& u0, const DispersionPath& path);

// Space-time norm over recorded per-step spatial norms; p must be one of the
// recorded exponents (2, 10, inf).
double spacetime_norm(const Trajectory& traj, double r, double p, double t_a, double t_b);

// CSV with columns step,t,l2,h1,linf,l10,running_l5l10,theta_scale,flags.
void write_trajectory_csv(const Trajectory& traj, const std::string& filename);

// Little-endian binary snapshot: int64 N, float64 L, float64 t, then N
// (re, im) float64 pairs.
void write_snapshot(const StateField& f, double t, const std::string& filename);
StateField read_snapshot(const std::string& filename, double* t_out = nullptr);

}  // namespace wnls

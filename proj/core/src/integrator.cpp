#include "wnls/integrator.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "wnls/fft.hpp"
#include "wnls/spectral.hpp"

namespace wnls {

std::string flag_string(unsigned mask) {
  if (mask == 0u) return "-";
  std::string s;
  auto add = [&s](const char* tok) {
    if (!s.empty()) s += '|';
    s += tok;
  };
  if (mask & kFlagTauR) add("tau_r");
  if (mask & kFlagMThreshold) add("m_threshold");
  if (mask & kFlagBlowupLinf) add("blowup_linf");
  if (mask & kFlagBlowupResolution) add("blowup_resolution");
  if (mask & kFlagBlowupNumerical) add("blowup_numerical");
  return s;
}

int EvolveConfig::steps() const {
  if (!(dt > 0.0) || !(t_final > 0.0)) {
    throw std::invalid_argument("EvolveConfig: dt and t_final must be positive");
  }
  const double r = t_final / dt;
  const double j = std::round(r);
  if (j < 1.0 || std::abs(r - j) > 1e-9 * std::max(1.0, r)) {
    throw std::invalid_argument("EvolveConfig: dt must divide t_final");
  }
  return static_cast<int>(j);
}

double cutoff_theta(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("cutoff_theta: argument must be >= 0");
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  auto bump = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
  const double a = bump(2.0 - x);
  const double b = bump(x - 1.0);
  return a / (a + b);
}

StateField nonlinear_phase_step(const StateField& f, double dt, double scale) {
  if (f.rep() != Rep::physical) {
    throw std::invalid_argument("nonlinear_phase_step: physical representation required");
  }
  StateField out = f;
  for (auto& v : out.values()) {
    const double a = std::norm(v);
    v *= std::polar(1.0, scale * a * a * dt);
  }
  return out;
}

StateField nonlinear_phase_step_pointwise(const StateField& f, double dt, double m_level) {
  if (f.rep() != Rep::physical) {
    throw std::invalid_argument("nonlinear_phase_step_pointwise: physical representation required");
  }
  if (!(m_level > 0.0)) {
    throw std::invalid_argument("nonlinear_phase_step_pointwise: level must be positive");
  }
  StateField out = f;
  for (auto& v : out.values()) {
    const double a = std::norm(v);
    v *= std::polar(1.0, cutoff_theta(a / m_level) * a * a * dt);
  }
  return out;
}

StateField strang_step(const StateField& f, double db, double dt, double scale,
                       PropagatorConvention conv) {
  StateField half = apply_linear(f, 0.5 * db, conv);
  StateField mid = nonlinear_phase_step(to_physical(half), dt, scale);
  return apply_linear(mid, 0.5 * db, conv);
}

namespace {

struct Workspace {
  std::vector<Complex> spec, phys, tmp;
};

// Forward/backward between the dx-weighted physical samples and the
// integral-approximating spectrum; matches transform() exactly.
void fft_fwd(Dft& engine, const SpatialGrid& g, Workspace& w) {
  engine.forward(w.phys.data(), w.spec.data());
  for (int k = 0; k < g.n_points; ++k) {
    w.spec[k] *= (k & 1) ? -g.dx : g.dx;
  }
}

void fft_bwd(Dft& engine, const SpatialGrid& g, Workspace& w) {
  const double s = 1.0 / (2.0 * g.half_width);
  for (int k = 0; k < g.n_points; ++k) {
    w.tmp[k] = w.spec[k] * ((k & 1) ? -s : s);
  }
  engine.backward(w.tmp.data(), w.phys.data());
}

struct StepObs {
  double l2, h1, linf, l10, band, boundary;
};

StepObs observe(const SpatialGrid& g, const Workspace& w) {
  StepObs o{};
  const int n = g.n_points;
  double p2 = 0.0, p10 = 0.0, pinf = 0.0, edge = 0.0;
  const double xcut = 0.75 * g.half_width;
  for (int j = 0; j < n; ++j) {
    const double m2 = std::norm(w.phys[j]);
    p2 += m2;
    const double m4 = m2 * m2;
    p10 += m4 * m4 * m2;
    if (m2 > pinf) pinf = m2;
    if (std::abs(g.nodes[j]) >= xcut) edge += m2;
  }
  o.l2 = std::sqrt(p2 * g.dx);
  o.l10 = std::pow(p10 * g.dx, 0.1);
  o.linf = std::sqrt(pinf);
  o.boundary = p2 > 0.0 ? edge / p2 : 0.0;

  const double wgt = 1.0 / (2.0 * g.half_width);
  const double bcut = (2.0 / 3.0) * g.freq_max() * (1.0 - 1e-12);
  double s2 = 0.0, h1 = 0.0, band = 0.0;
  for (int k = 0; k < n; ++k) {
    const double m2 = std::norm(w.spec[k]);
    const double xi2 = g.freq[k] * g.freq[k];
    h1 += (1.0 + xi2) * m2;
    s2 += m2;
    if (std::abs(g.freq[k]) >= bcut) band += m2;
  }
  o.h1 = std::sqrt(h1 * wgt);
  o.band = s2 > 0.0 ? band / s2 : 0.0;
  return o;
}

}  // namespace

Trajectory evolve(const EvolveConfig& cfg, const StateField& u0, const DispersionPath& path) {
  const int n_steps = cfg.steps();
  if (path.steps() != n_steps || std::abs(path.dt - cfg.dt) > 1e-9 * cfg.dt) {
    throw std::invalid_argument("evolve: dispersion path does not match the step grid");
  }
  if (cfg.cutoff_R && cfg.cutoff_M) {
    throw std::invalid_argument("evolve: cutoff_R and cutoff_M are mutually exclusive");
  }
  if (cfg.cutoff_R && !(*cfg.cutoff_R > 0.0)) {
    throw std::invalid_argument("evolve: cutoff_R must be positive");
  }
  if (cfg.cutoff_M && !(*cfg.cutoff_M > 0.0)) {
    throw std::invalid_argument("evolve: cutoff_M must be positive");
  }

  const auto& g = u0.grid();
  const int n = g.n_points;
  Dft& engine = dft_for(n);

  Workspace w;
  w.spec.resize(n);
  w.phys.resize(n);
  w.tmp.resize(n);
  {
    StateField phys0 = to_physical(u0);
    w.phys = phys0.values();
  }
  fft_fwd(engine, g, w);

  Trajectory traj;
  traj.dt = cfg.dt;
  traj.cutoff_R = cfg.cutoff_R;
  traj.cutoff_M = cfg.cutoff_M;
  traj.initial = StateField(u0.grid_ptr(), Rep::physical, w.phys);
  const int reserve = n_steps + 1;
  for (auto* v : {&traj.t, &traj.l2, &traj.h1, &traj.linf, &traj.l10, &traj.running_l5l10,
                  &traj.theta_scale, &traj.band_fraction, &traj.boundary_fraction,
                  &traj.dispersion}) {
    v->reserve(reserve);
  }
  traj.flags.reserve(reserve);

  const bool quintic = cfg.nonlinearity == Nonlinearity::quintic;
  const double conv_factor = cfg.convention.factor();
  const int dealias_halfwidth = g.n_points / 6;

  unsigned flags = 0u;
  double running_pow5 = 0.0;
  double linf0 = 0.0;
  double current_scale = quintic ? 1.0 : 0.0;

  auto record = [&](int j) -> bool {
    const StepObs o = observe(g, w);
    const double tj = j * cfg.dt;
    running_pow5 += std::pow(o.l10, 5.0) * cfg.dt;
    const double running = std::pow(running_pow5, 0.2);

    if (j == 0) linf0 = o.linf;

    if (!std::isfinite(o.l2) || !std::isfinite(o.linf)) {
      if (!(flags & kFlagBlowupNumerical)) {
        flags |= kFlagBlowupNumerical;
        traj.blowup_step = j;
      }
    } else {
      if (j > 0 && o.linf > cfg.blowup_linf_factor * linf0 && !(flags & kFlagBlowupLinf)) {
        flags |= kFlagBlowupLinf;
        if (!traj.blowup_step) traj.blowup_step = j;
      }
      if (o.band > cfg.blowup_band_fraction && !(flags & kFlagBlowupResolution)) {
        flags |= kFlagBlowupResolution;
        if (!traj.blowup_step) traj.blowup_step = j;
      }
    }
    if (cfg.cutoff_R && running >= *cfg.cutoff_R && !(flags & kFlagTauR)) {
      flags |= kFlagTauR;
      traj.tau_r_step = j;
    }
    // The pointwise factor starts acting where |u|^2 reaches the level, so
    // that is the meaningful "truncation engaged" marker.
    if (cfg.cutoff_M && o.linf * o.linf >= *cfg.cutoff_M && !(flags & kFlagMThreshold)) {
      flags |= kFlagMThreshold;
      traj.m_threshold_step = j;
    }

    double theta = quintic ? 1.0 : 0.0;
    if (quintic && cfg.cutoff_R) theta = cutoff_theta(running / *cfg.cutoff_R);
    if (quintic && cfg.cutoff_M) {
      double worst = 1.0;
      for (const auto& v : w.phys) {
        worst = std::min(worst, cutoff_theta(std::norm(v) / *cfg.cutoff_M));
      }
      theta = worst;
    }
    current_scale = quintic && cfg.cutoff_R ? theta : (quintic ? 1.0 : 0.0);

    traj.t.push_back(tj);
    traj.l2.push_back(o.l2);
    traj.h1.push_back(o.h1);
    traj.linf.push_back(o.linf);
    traj.l10.push_back(o.l10);
    traj.running_l5l10.push_back(running);
    traj.theta_scale.push_back(theta);
    traj.band_fraction.push_back(o.band);
    traj.boundary_fraction.push_back(o.boundary);
    traj.dispersion.push_back(path.b[j]);
    traj.flags.push_back(flags);

    if (cfg.save_stride > 0 && j % cfg.save_stride == 0) {
      traj.snapshots.emplace_back(j, StateField(u0.grid_ptr(), Rep::physical, w.phys));
    }
    return (flags & (kFlagBlowupLinf | kFlagBlowupResolution | kFlagBlowupNumerical)) != 0u;
  };

  bool stopped = record(0);
  if (!stopped) {
    for (int j = 0; j < n_steps; ++j) {
      const double db = path.increment(j);
      const bool nl_active =
          quintic && (cfg.cutoff_M ? true : current_scale != 0.0);

      auto multiply = [&](double inc) {
        const double c = conv_factor * inc;
        for (int k = 0; k < n; ++k) {
          const double xi = g.freq[k];
          w.spec[k] *= std::polar(1.0, -xi * xi * c);
        }
      };
      auto phase = [&](double dt_eff) {
        if (cfg.cutoff_M) {
          const double m_level = *cfg.cutoff_M;
          for (auto& v : w.phys) {
            const double a = std::norm(v);
            v *= std::polar(1.0, cutoff_theta(a / m_level) * a * a * dt_eff);
          }
        } else {
          for (auto& v : w.phys) {
            const double a = std::norm(v);
            v *= std::polar(1.0, current_scale * a * a * dt_eff);
          }
        }
      };
      auto dealias = [&] {
        if (!cfg.dealias_truncate) return;
        for (int k = 0; k < n; ++k) {
          const int idx = (k < n / 2) ? k : k - n;
          if (std::abs(idx) > dealias_halfwidth) w.spec[k] = Complex(0.0, 0.0);
        }
      };

      if (cfg.splitting == Splitting::strang) {
        multiply(0.5 * db);
        if (nl_active) {
          fft_bwd(engine, g, w);
          phase(cfg.dt);
          fft_fwd(engine, g, w);
          dealias();
        }
        multiply(0.5 * db);
      } else {
        multiply(db);
        if (nl_active) {
          fft_bwd(engine, g, w);
          phase(cfg.dt);
          fft_fwd(engine, g, w);
          dealias();
        }
      }

      fft_bwd(engine, g, w);
      if (record(j + 1)) break;
    }
  }

  traj.final_flags = flags;
  traj.final_state = StateField(u0.grid_ptr(), Rep::physical, w.phys);
  return traj;
}

double spacetime_norm(const Trajectory& traj, double r, double p, double t_a, double t_b) {
  const std::vector<double>* col = nullptr;
  if (p == 2.0) col = &traj.l2;
  else if (p == 10.0) col = &traj.l10;
  else if (p == kPInf) col = &traj.linf;
  else throw std::invalid_argument("spacetime_norm: spatial exponent not recorded (use 2, 10 or inf)");
  return spacetime_norm(*col, traj.dt, r, t_a, t_b);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& filename) {
  std::FILE* fp = std::fopen(filename.c_str(), "w");
  if (!fp) throw std::runtime_error("write_trajectory_csv: cannot open " + filename);
  std::fprintf(fp, "step,t,l2,h1,linf,l10,running_l5l10,theta_scale,flags\n");
  for (size_t j = 0; j < traj.t.size(); ++j) {
    std::fprintf(fp, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", j, traj.t[j],
                 traj.l2[j], traj.h1[j], traj.linf[j], traj.l10[j], traj.running_l5l10[j],
                 traj.theta_scale[j], flag_string(traj.flags[j]).c_str());
  }
  std::fclose(fp);
}

void write_snapshot(const StateField& f, double t, const std::string& filename) {
  if (f.rep() != Rep::physical) {
    throw std::invalid_argument("write_snapshot: physical representation required");
  }
  std::FILE* fp = std::fopen(filename.c_str(), "wb");
  if (!fp) throw std::runtime_error("write_snapshot: cannot open " + filename);
  const std::int64_t n = f.size();
  const double L = f.grid().half_width;
  std::fwrite(&n, sizeof(n), 1, fp);
  std::fwrite(&L, sizeof(L), 1, fp);
  std::fwrite(&t, sizeof(t), 1, fp);
  std::fwrite(f.values().data(), sizeof(Complex), f.values().size(), fp);
  std::fclose(fp);
}

StateField read_snapshot(const std::string& filename, double* t_out) {
  std::FILE* fp = std::fopen(filename.c_str(), "rb");
  if (!fp) throw std::runtime_error("read_snapshot: cannot open " + filename);
  std::int64_t n = 0;
  double L = 0.0, t = 0.0;
  bool ok = std::fread(&n, sizeof(n), 1, fp) == 1 && std::fread(&L, sizeof(L), 1, fp) == 1 &&
            std::fread(&t, sizeof(t), 1, fp) == 1;
  if (!ok || n <= 0) {
    std::fclose(fp);
    throw std::runtime_error("read_snapshot: malformed header in " + filename);
  }
  std::vector<Complex> v(static_cast<size_t>(n));
  ok = std::fread(v.data(), sizeof(Complex), v.size(), fp) == v.size();
  std::fclose(fp);
  if (!ok) throw std::runtime_error("read_snapshot: truncated payload in " + filename);
  if (t_out) *t_out = t;
  return StateField(make_grid(L, static_cast<int>(n)), Rep::physical, std::move(v));
}

}  // namespace wnls

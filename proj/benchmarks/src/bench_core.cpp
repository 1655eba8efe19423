#include <benchmark/benchmark.h>

#include <cmath>

#include "wnls/field.hpp"
#include "wnls/grid.hpp"
#include "wnls/integrator.hpp"
#include "wnls/montecarlo.hpp"
#include "wnls/noise.hpp"
#include "wnls/observables.hpp"
#include "wnls/propagator.hpp"
#include "wnls/spectral.hpp"

namespace {

using namespace wnls;

void BM_TransformRoundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_grid(10.0, n);
  auto u = make_gaussian(g, 1.0, 1.0);
  for (auto _ : state) {
    auto back = to_physical(to_spectral(u));
    benchmark::DoNotOptimize(back.values().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TransformRoundtrip)->Arg(256)->Arg(1024)->Arg(4096);

void BM_StrangStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_grid(10.0, n);
  auto u = make_gaussian(g, 1.0, 1.0);
  for (auto _ : state) {
    u = strang_step(u, 1e-3, 1e-3, 1.0);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StrangStep)->Arg(256)->Arg(1024)->Arg(4096);

void BM_EvolveTrajectory(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_grid(10.0, n);
  auto u0 = make_gaussian(g, 1.0, 1.0);
  EvolveConfig cfg;
  cfg.t_final = 0.064;
  cfg.dt = 1e-3;
  auto path = sample_brownian(cfg.steps(), cfg.dt, 42);
  for (auto _ : state) {
    auto traj = evolve(cfg, u0, path);
    benchmark::DoNotOptimize(traj.l2.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.steps());
}
BENCHMARK(BM_EvolveTrajectory)->Arg(256)->Arg(1024);

void BM_KernelApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_grid(10.0, n);
  auto u = make_gaussian(g, 1.0, 1.0);
  for (auto _ : state) {
    auto out = kernel_apply(u, 0.5);
    benchmark::DoNotOptimize(out.values().data());
  }
}
BENCHMARK(BM_KernelApply)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SmoothingFunctional(benchmark::State& state) {
  auto g = make_grid(10.0, 256);
  auto f = make_gaussian(g, 1.0, 1.0);
  const int steps = 32;
  const double dt = 1.0 / 64.0;
  auto src = SourceSeries::constant(f, steps, dt);
  auto path = sample_brownian(steps, dt, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smoothing_functional(src, path, steps * dt));
  }
}
BENCHMARK(BM_SmoothingFunctional);

void BM_EnsembleThroughput(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  auto g = make_grid(10.0, 256);
  auto u0 = make_gaussian(g, 1.0, 1.0);
  EnsembleConfig ec;
  ec.evolve.t_final = 0.05;
  ec.evolve.dt = 1e-3;
  ec.n_paths = 16;
  ec.root_seed = 99;
  ec.threads = threads;
  NamedFunctional fl2{"l2", [](const Trajectory& t) { return t.l2.back(); }};
  for (auto _ : state) {
    auto st = run_ensemble(ec, u0, {fl2});
    benchmark::DoNotOptimize(st.n_failed);
  }
  state.SetItemsProcessed(state.iterations() * ec.n_paths);
}
BENCHMARK(BM_EnsembleThroughput)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wnls/noise.hpp"
#include "wnls/stats.hpp"

using namespace wnls;

TEST_SUITE("noise_paths") {

TEST_CASE("brownian paths start at zero and are seed-deterministic") {
  DispersionPath p = sample_brownian(1, 0.25, 99);
  CHECK(p.b[0] == 0.0);
  CHECK(p.steps() == 1);
  CHECK(p.kind == PathKind::brownian);

  DispersionPath a = sample_brownian(64, 0.01, 1234);
  DispersionPath b = sample_brownian(64, 0.01, 1234);
  DispersionPath c = sample_brownian(64, 0.01, 1235);
  CHECK(a.b == b.b);
  CHECK(a.b != c.b);

  CHECK_THROWS_AS(sample_brownian(0, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_brownian(8, -0.1, 1), std::invalid_argument);
}

TEST_CASE("brownian endpoint statistics match the Gaussian law") {
  const int n_paths = 100000;
  const int J = 16;
  const double dt = 1.0 / 16.0;
  std::vector<double> ends(n_paths);
  for (int i = 0; i < n_paths; ++i) ends[i] = sample_brownian(J, dt, path_seed(5, i)).b[J];
  const double m = mean(ends);
  const double v = sample_variance(ends);
  CHECK(std::abs(m) < 4.0 / std::sqrt(static_cast<double>(n_paths)));  // 4 sigma
  CHECK(v == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("brownian refinement keeps the endpoint law") {
  const int n_paths = 10000;
  for (auto [J, dt] : {std::pair<int, double>{16, 1.0 / 16.0}, {32, 1.0 / 32.0}}) {
    std::vector<double> ends(n_paths);
    for (int i = 0; i < n_paths; ++i) ends[i] = sample_brownian(J, dt, path_seed(17, i)).b[J];
    CHECK(std::abs(mean(ends)) < 4.0 / std::sqrt(static_cast<double>(n_paths)));
    CHECK(sample_variance(ends) == doctest::Approx(J * dt).epsilon(0.05));
  }
}

TEST_CASE("path coarsening restricts to shared grid points") {
  DispersionPath p = sample_brownian(16, 0.125, 3);
  DispersionPath q = p.coarsen(4);
  CHECK(q.steps() == 4);
  CHECK(q.dt == doctest::Approx(0.5));
  for (int j = 0; j <= 4; ++j) CHECK(q.b[j] == p.b[4 * j]);
  CHECK_THROWS_AS(p.coarsen(3), std::invalid_argument);
}

TEST_CASE("deterministic ramp path") {
  DispersionPath p = deterministic_path(10, 0.1, 2.0);
  CHECK(p.kind == PathKind::deterministic);
  for (int j = 0; j <= 10; ++j) CHECK(p.b[j] == doctest::Approx(0.2 * j).epsilon(1e-15));
}

TEST_CASE("stationary drive: preconditions and degenerate limit") {
  StationaryDriver drv;
  drv.relax_rate = 1.0;
  drv.stationary_var = 0.5;
  CHECK(drv.d_eff() == doctest::Approx(1.0));
  CHECK_THROWS_AS(sample_stationary(drv, 16, 0.2, 1), std::invalid_argument);

  StationaryDriver quiet = drv;
  quiet.stationary_var = 0.0;
  for (double m : sample_stationary(quiet, 100, 0.05, 1)) CHECK(m == 0.0);
}

TEST_CASE("ou drive matches the exponential autocovariance") {
  StationaryDriver drv;
  drv.kind = StationaryDriver::Kind::ou;
  drv.relax_rate = 1.0;
  drv.stationary_var = 0.5;
  const double ds = 0.05;
  const int lag = 10;  // tau = 0.5
  const int n_paths = 20000;
  std::vector<double> prod(n_paths), sq(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    auto m = sample_stationary(drv, lag + 1, ds, path_seed(31, i));
    prod[i] = m[0] * m[lag];
    sq[i] = m[0] * m[0];
  }
  const double want = drv.stationary_var * std::exp(-drv.relax_rate * lag * ds);
  const double se_p = std::sqrt(sample_variance(prod) / n_paths);
  CHECK(std::abs(mean(prod) - want) < 3.0 * se_p);
  const double se_s = std::sqrt(sample_variance(sq) / n_paths);
  CHECK(std::abs(mean(sq) - drv.stationary_var) < 3.0 * se_s);
}

TEST_CASE("telegraph drive flips between the two levels with the same covariance") {
  StationaryDriver drv;
  drv.kind = StationaryDriver::Kind::telegraph;
  drv.relax_rate = 1.0;
  drv.stationary_var = 0.5;
  const double level = std::sqrt(0.5);
  const double ds = 0.05;
  const int lag = 10;
  const int n_paths = 20000;
  std::vector<double> prod(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    auto m = sample_stationary(drv, lag + 1, ds, path_seed(77, i));
    for (double v : m) CHECK(std::abs(std::abs(v) - level) < 1e-14);
    prod[i] = m[0] * m[lag];
  }
  const double want = drv.stationary_var * std::exp(-drv.relax_rate * lag * ds);
  const double se = std::sqrt(sample_variance(prod) / n_paths);
  CHECK(std::abs(mean(prod) - want) < 3.0 * se);
}

TEST_CASE("integrated dispersion quadrature on deterministic drives") {
  std::vector<double> zero(11, 0.0);
  DispersionPath nz = integrated_dispersion(zero, 0.5, 0.1);
  for (double b : nz.b) CHECK(b == 0.0);

  // m = 1: n(t) = eps * t / eps^2 = t / eps.
  std::vector<double> one(11, 1.0);
  DispersionPath n1 = integrated_dispersion(one, 0.5, 0.1);
  CHECK(n1.kind == PathKind::integrated_stationary);
  for (int j = 0; j <= 10; ++j) {
    CHECK(n1.b[j] == doctest::Approx(0.1 * j / 0.5).epsilon(1e-12));
  }

  CHECK_THROWS_AS(integrated_dispersion(std::vector<double>{1.0}, 0.5, 0.1),
                  std::invalid_argument);
}

TEST_CASE("integrated ou dispersion approaches the diffusive variance") {
  StationaryDriver drv;
  drv.relax_rate = 1.0;
  drv.stationary_var = 0.5;  // D_eff = 1
  const double eps = 0.2;
  const double dt = 2e-3;  // ds = dt/eps^2 = 0.05
  const int J = 500;       // t = 1
  const int n_paths = 4000;
  std::vector<double> ends(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    ends[i] = sample_integrated_dispersion(drv, J, dt, eps, path_seed(123, i)).b[J];
  }
  // Var n_eps(1) = 1 - eps^2 (1 - e^{-1/eps^2}) for D_eff = 1.
  const double want = 1.0 - eps * eps * (1.0 - std::exp(-1.0 / (eps * eps)));
  CHECK(sample_variance(ends) == doctest::Approx(want).epsilon(0.10));
  CHECK(std::abs(mean(ends)) < 4.0 / std::sqrt(static_cast<double>(n_paths)));
}

TEST_CASE("make_path dispatches on the requested path kind") {
  DispersionSpec spec;
  spec.kind = PathKind::deterministic;
  spec.slope = 3.0;
  DispersionPath det = make_path(spec, 4, 0.25, 1);
  CHECK(det.b[4] == doctest::Approx(3.0).epsilon(1e-14));

  spec.kind = PathKind::brownian;
  CHECK(make_path(spec, 4, 0.25, 9).b == sample_brownian(4, 0.25, 9).b);

  spec.kind = PathKind::integrated_stationary;
  spec.eps = 0.3;
  spec.driver.relax_rate = 1.0;
  spec.driver.stationary_var = 0.5;
  DispersionPath n = make_path(spec, 4, 0.002, 9);
  CHECK(n.steps() == 4);
  CHECK(n.b[0] == 0.0);
}

TEST_CASE("path csv export") {
  DispersionPath p = deterministic_path(3, 0.5, 1.0);
  const std::string file = "path_export_test.csv";
  export_path_csv(p, file);
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,value");
  std::getline(in, line);
  CHECK(line == "0,0");
  std::getline(in, line);
  CHECK(line == "0.5,0.5");
  in.close();
  std::remove(file.c_str());
}

TEST_CASE("seed splitting decorrelates neighbouring path indices") {
  CHECK(path_seed(42, 0) != path_seed(42, 1));
  CHECK(path_seed(42, 1) != path_seed(43, 0));
  auto g0 = make_generator(path_seed(42, 0));
  auto g1 = make_generator(path_seed(42, 1));
  CHECK(g0() != g1());
}

}  // TEST_SUITE

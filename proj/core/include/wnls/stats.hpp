#pragma once

#include <vector>

namespace wnls {

inline constexpr double kZ95 = 1.959963984540054;

struct WilsonInterval {
  int successes = 0;
  int n = 0;
  double fraction = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(int successes, int n, double z = kZ95);

struct MomentEstimate {
  int order = 1;
  double value = 0.0;  // mean of x^k
  double lo = 0.0;     // normal-approximation confidence band
  double hi = 0.0;
};

// k-th raw moment with a normal-approximation interval on the mean of x^k.
// k must be 1, 2 or 4.
MomentEstimate moment(const std::vector<double>& samples, int k, double z = kZ95);

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);
double median(std::vector<double> xs);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wnls

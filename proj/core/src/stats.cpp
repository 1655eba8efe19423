#include "wnls/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wnls {

WilsonInterval wilson_interval(int successes, int n, double z) {
  if (n <= 0 || successes < 0 || successes > n) {
    throw std::invalid_argument("wilson_interval: bad counts");
  }
  WilsonInterval w;
  w.successes = successes;
  w.n = n;
  const double p = static_cast<double>(successes) / n;
  w.fraction = p;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  w.lo = std::max(0.0, center - half);
  w.hi = std::min(1.0, center + half);
  return w;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample_variance: need >= 2 samples");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(xs.begin(), xs.end());
  const size_t n = xs.size();
  return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

MomentEstimate moment(const std::vector<double>& samples, int k, double z) {
  if (k != 1 && k != 2 && k != 4) {
    throw std::invalid_argument("moment: order must be 1, 2 or 4");
  }
  if (samples.size() < 2) throw std::invalid_argument("moment: need >= 2 samples");
  std::vector<double> powed(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i];
    powed[i] = (k == 1) ? x : (k == 2 ? x * x : (x * x) * (x * x));
  }
  MomentEstimate e;
  e.order = k;
  e.value = mean(powed);
  const double se = std::sqrt(sample_variance(powed) / static_cast<double>(powed.size()));
  e.lo = e.value - z * se;
  e.hi = e.value + z * se;
  return e;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_slope: need matching samples, >= 2 points");
  }
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissa");
  return sxy / sxx;
}

}  // namespace wnls

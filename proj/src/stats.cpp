#include "noisylab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "noisylab/errors.hpp"

namespace noisylab::stats {

double mean(std::span<const double> x) {
  NOISYLAB_EXPECTS(!x.empty(), "mean of empty sample");
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double mu = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double quantile(std::span<const double> x, double prob) {
  NOISYLAB_EXPECTS(!x.empty(), "quantile of empty sample");
  NOISYLAB_EXPECTS(prob >= 0.0 && prob <= 1.0, "quantile probability outside [0,1]");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace noisylab::stats

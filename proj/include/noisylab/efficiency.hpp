#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "noisylab/rng.hpp"

namespace noisylab {

// m(1 + α₀)/(m + α₀): efficiency of the vote-trained rule relative to the
// ground-truth-trained rule as n → ∞.
double theoretical_are(long m, double alpha0);

// err − bayes, floored at zero to absorb rounding noise.
double excess_error(double err, double bayes);

struct ExcessPair {
  double ground_truth = 0.0;  // excess error of β̂_G
  double votes = 0.0;         // excess error of β̂_M
};

struct RatioBootstrap {
  double se = 0.0;
  long redraws = 0;  // resamples drawn again because mean(votes*) was zero
};

// Standard deviation of mean(G*)/mean(M*) over B joint resamples of the
// pairs. Throws ConvergenceError when more than 1% of resamples need a redraw.
RatioBootstrap bootstrap_se_of_ratio(std::span<const ExcessPair> pairs, int resamples, Rng& rng);

struct AreConfig {
  long n = 500;
  long p = 2;
  double delta = 2.0;
  double prior1 = 0.5;
  long m = 5;
  double alpha0 = 1.0;
  long replications = 1000;
  std::uint64_t seed = 1;
  int bootstrap_resamples = 500;
  unsigned threads = 1;
};

struct AreResult {
  double theoretical_are = 0.0;
  double simulated_re = 0.0;
  std::optional<double> bootstrap_se;  // absent with fewer than two usable replications
  double mean_excess_error_G = 0.0;
  double mean_excess_error_M = 0.0;
  double bayes_error = 0.0;
  long replications_used = 0;
  long failures = 0;  // replications dropped because a fit failed
  std::vector<ExcessPair> pairs;
};

// Monte-Carlo relative efficiency on the canonical Gaussian problem. Each
// replication uses Rng::stream(seed, replication) so results do not depend
// on the thread count. Throws ConvergenceError if more than 5% of
// replications fail to fit.
AreResult simulate_relative_efficiency(const AreConfig& config);

}  // namespace noisylab

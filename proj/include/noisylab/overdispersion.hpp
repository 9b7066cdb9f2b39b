#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "noisylab/dataset.hpp"
#include "noisylab/logreg.hpp"

namespace noisylab {

struct AlphaSearch {
  double lo = 1e-4;
  double hi = 1e7;
  int grid_points = 60;
  double tolerance = 1e-6;  // on ln α₀
  double boundary_margin = 1e-3;  // on ln α₀
};

enum class Boundary { None, Lower, Upper };

struct AlphaEstimate {
  double alpha0_hat = 0.0;
  double log_likelihood = 0.0;
  bool boundary_flag = false;
  Boundary boundary = Boundary::None;
};

// Σ_j ln DM(s_j; m, α₀·τ_j) for two-class votes.
double alpha_log_likelihood(std::span<const double> tau1, std::span<const long> positive,
                            long group_size, double alpha0);

// Maximum-likelihood α₀ with τ_j held fixed: grid scan on ln α₀ followed by
// golden-section refinement around the best grid point. Throws
// IdentifiabilityError for m = 1 and DegeneracyError for a flat likelihood.
AlphaEstimate estimate_alpha0(std::span<const double> tau1, std::span<const long> positive,
                              long group_size, const AlphaSearch& search = {});

// Same, with τ_j = τ₁(y_j; β̂).
AlphaEstimate estimate_alpha0(const DesignMatrix& x, const BinomialResponse& votes,
                              const LogisticModel& beta_hat, const AlphaSearch& search = {});

// Which estimator produced β̂, and therefore how it is refitted per resample.
enum class BetaSource { GroundTruth, Votes, Fixed };

struct AlphaBootstrapOptions {
  int resamples = 500;
  double level = 0.95;
  BetaSource source = BetaSource::GroundTruth;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  AlphaSearch search;
};

struct AlphaBootstrap {
  std::vector<double> estimates;  // one per resample, in resample order
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  long failures = 0;  // resamples redrawn after a failed fit or estimate
};

// Nonparametric bootstrap over rows. β̂ is refitted on every resample from the
// labels (GroundTruth) or votes (Votes), or held at `beta_hat` (Fixed), and α₀
// re-estimated. Percentile interval at options.level. Throws ConvergenceError
// when more than 5% of resamples fail.
AlphaBootstrap bootstrap_alpha0(const LabelledDataset& data, const LogisticModel& beta_hat,
                                const AlphaBootstrapOptions& options);

}  // namespace noisylab

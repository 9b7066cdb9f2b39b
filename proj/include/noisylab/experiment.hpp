#pragma once

#include <vector>

#include "noisylab/dataio.hpp"
#include "noisylab/logreg.hpp"

namespace noisylab {

enum class SeparationPolicy {
  Redraw,  // discard the split and draw another (counted)
  Ridge,   // refit the affected model with the ridge fallback
};

struct ExperimentOptions {
  std::vector<long> group_sizes;
  std::vector<double> alphas;
  SeparationPolicy on_separation = SeparationPolicy::Redraw;
  double max_redraw_fraction = 0.1;
  unsigned threads = 1;
};

struct ErrorSummary {
  double mean = 0.0;
  double se = 0.0;  // sd / √repetitions
};

struct ExperimentCell {
  long m = 0;
  double alpha0 = 0.0;
  ErrorSummary error;
  double simulated_re = 0.0;  // NaN when the vote-trained rule is not worse than the proxy
  double theoretical_are = 0.0;
};

struct ExperimentResult {
  LogisticModel beta_full;       // on the standardised full data
  double apparent_error = 0.0;   // Bayes-error proxy
  ErrorSummary ground_truth;     // β̂_G test error
  std::vector<ExperimentCell> cells;  // group_sizes × alphas, m varying slowest
  long repetitions = 0;
  long redraws = 0;
  long ridge_refits = 0;
  std::vector<double> ground_truth_errors;  // per repetition
};

// Train/test protocol with simulated Dirichlet-Multinomial votes. β_full is
// fitted on all N rows and treated as the truth; each repetition draws a
// split, simulates votes for the training rows from DM(m, α₀ τ(y; β_full)),
// fits β̂_G and β̂_M on the standardised training rows and scores 0–1 error on
// the test rows (standardised with training parameters).
ExperimentResult run_dataset_experiment(const LabelledDataset& data, const SplitPlan& plan,
                                        const ExperimentOptions& options);

// Fraction of rows misclassified by "positive iff η ≥ 0".
double misclassification_rate(const DesignMatrix& x, std::span<const int> labels,
                              const LogisticModel& beta);

}  // namespace noisylab

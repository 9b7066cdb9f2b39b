#include "noisylab/experiment.hpp"

#include <cmath>
#include <limits>
#include <fmt/format.h>

#include "noisylab/efficiency.hpp"
#include "noisylab/errors.hpp"
#include "noisylab/parallel.hpp"
#include "noisylab/special.hpp"
#include "noisylab/stats.hpp"

namespace noisylab {

double misclassification_rate(const DesignMatrix& x, std::span<const int> labels,
                              const LogisticModel& beta) {
  NOISYLAB_EXPECTS(static_cast<Eigen::Index>(labels.size()) == x.rows(), "label length mismatch");
  const auto eta = linear_predictors(x, beta);
  std::size_t wrong = 0;
  for (std::size_t j = 0; j < eta.size(); ++j) {
    wrong += ((eta[j] >= 0.0 ? 1 : 0) != labels[j]) ? 1 : 0;
  }
  return static_cast<double>(wrong) / static_cast<double>(eta.size());
}

namespace {

struct RepetitionOutcome {
  double ground_truth_error = 0.0;
  std::vector<double> cell_errors;
  long redraws = 0;
  long ridge_refits = 0;
};

ErrorSummary summarize(const std::vector<double>& errors) {
  return {stats::mean(errors),
          stats::sample_sd(errors) / std::sqrt(static_cast<double>(errors.size()))};
}

}  // namespace

ExperimentResult run_dataset_experiment(const LabelledDataset& data, const SplitPlan& plan,
                                        const ExperimentOptions& o) {
  NOISYLAB_EXPECTS(data.labels.has_value(), "experiment: dataset needs ground-truth labels");
  NOISYLAB_EXPECTS(plan.repetitions >= 1, "experiment: repetitions must be >= 1");
  NOISYLAB_EXPECTS(plan.train_size >= data.dim() + 1 && plan.train_size < data.rows(),
                   "experiment: need p + 1 <= train size < N");
  NOISYLAB_EXPECTS(!o.group_sizes.empty() && !o.alphas.empty(), "experiment: empty (m, alpha0) grid");

  struct Cell {
    GroupModel group;
  };
  std::vector<Cell> cells;
  for (long m : o.group_sizes) {
    for (double a : o.alphas) cells.push_back({GroupModel(m, a)});
  }

  auto fit_with_policy = [&](const DesignMatrix& x, const BinomialResponse& y, long& ridge_refits) {
    try {
      return fit(x, y);
    } catch (const SeparationError&) {
      if (o.on_separation != SeparationPolicy::Ridge) throw;
      ++ridge_refits;
      FitOptions ridge;
      ridge.ridge = true;
      return fit(x, y, ridge);
    }
  };

  ExperimentResult out;
  out.repetitions = plan.repetitions;
  const Standardized full = standardize(data);
  const DesignMatrix full_x = full.data.design();
  {
    long unused = 0;
    const FitResult f = fit_with_policy(full_x, full.data.label_response(), unused);
    if (!f.converged) throw ConvergenceError("full-data fit did not converge");
    out.beta_full = f.model;
  }
  out.apparent_error = misclassification_rate(full_x, *data.labels, out.beta_full);
  std::vector<double> tau_full = linear_predictors(full_x, out.beta_full);
  for (double& t : tau_full) t = special::sigmoid(t);

  const auto max_redraws = static_cast<long>(std::floor(o.max_redraw_fraction * plan.repetitions));
  std::vector<RepetitionOutcome> outcomes(static_cast<std::size_t>(plan.repetitions));

  parallel_for(outcomes.size(), o.threads, [&](std::size_t r) {
    Rng rng = Rng::stream(plan.seed, r);
    RepetitionOutcome& res = outcomes[r];
    for (;;) {
      const Split split = make_split(static_cast<std::size_t>(data.rows()),
                                     static_cast<std::size_t>(plan.train_size), rng);
      const LabelledDataset train_raw = data.subset(split.train);
      const LabelledDataset test_raw = data.subset(split.test);
      try {
        const Standardization st = fit_standardization(train_raw);
        const DesignMatrix train_x = apply_standardization(train_raw, st).design();
        const DesignMatrix test_x = apply_standardization(test_raw, st).design();

        long ridge = 0;
        const FitResult g = fit_with_policy(train_x, train_raw.label_response(), ridge);
        if (!g.converged) throw ConvergenceError("ground-truth fit did not converge");
        std::vector<double> errors;
        for (const auto& cell : cells) {
          std::vector<long> votes(split.train.size());
          for (std::size_t j = 0; j < split.train.size(); ++j) {
            votes[j] = sample_votes_dm(cell.group, ProbabilityVector::binary(tau_full[split.train[j]]), rng)[0];
          }
          const FitResult mfit = fit_with_policy(
              train_x, BinomialResponse::votes(votes, cell.group.group_size()), ridge);
          if (!mfit.converged) throw ConvergenceError("vote fit did not converge");
          errors.push_back(misclassification_rate(test_x, *test_raw.labels, mfit.model));
        }
        res.ground_truth_error = misclassification_rate(test_x, *test_raw.labels, g.model);
        res.cell_errors = std::move(errors);
        res.ridge_refits += ridge;
        return;
      } catch (const IdentifiabilityError&) {
        throw;
      } catch (const Error& e) {
        // Separable or degenerate split (e.g. a constant training column).
        if (++res.redraws > max_redraws) {
          throw ConvergenceError(fmt::format(
              "experiment: repetition {} exceeded the redraw budget ({}); last failure: {}", r,
              max_redraws, e.what()));
        }
      }
    }
  });

  for (const auto& res : outcomes) {
    out.redraws += res.redraws;
    out.ridge_refits += res.ridge_refits;
    out.ground_truth_errors.push_back(res.ground_truth_error);
  }
  if (out.redraws > max_redraws) {
    throw ConvergenceError(fmt::format("experiment: {} split redraws exceed {:.0f}% of {} repetitions",
                                       out.redraws, 100.0 * o.max_redraw_fraction, plan.repetitions));
  }
  out.ground_truth = summarize(out.ground_truth_errors);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> errors;
    for (const auto& res : outcomes) errors.push_back(res.cell_errors[c]);
    ExperimentCell cell;
    cell.m = cells[c].group.group_size();
    cell.alpha0 = cells[c].group.alpha0();
    cell.error = summarize(errors);
    cell.theoretical_are = theoretical_are(cell.m, cell.alpha0);
    const double excess_m = excess_error(cell.error.mean, out.apparent_error);
    cell.simulated_re = excess_m > 0.0
                            ? excess_error(out.ground_truth.mean, out.apparent_error) / excess_m
                            : std::numeric_limits<double>::quiet_NaN();
    out.cells.push_back(cell);
  }
  return out;
}

}  // namespace noisylab

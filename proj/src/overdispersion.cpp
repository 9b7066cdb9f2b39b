#include "noisylab/overdispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

#include "noisylab/errors.hpp"
#include "noisylab/models.hpp"
#include "noisylab/parallel.hpp"
#include "noisylab/rng.hpp"
#include "noisylab/special.hpp"
#include "noisylab/stats.hpp"

namespace noisylab {

double alpha_log_likelihood(std::span<const double> tau1, std::span<const long> positive,
                            long group_size, double alpha0) {
  NOISYLAB_EXPECTS(tau1.size() == positive.size(), "alpha likelihood: length mismatch");
  NOISYLAB_EXPECTS(alpha0 > 0.0, "alpha likelihood: alpha0 must be positive");
  // Terms that depend only on m and α₀ are added once.
  const double lf_m = special::log_factorial(group_size);
  const double lr_alpha = special::log_rising(alpha0, group_size);
  double ll = 0.0;
  for (std::size_t j = 0; j < tau1.size(); ++j) {
    const long s = positive[j];
    NOISYLAB_EXPECTS(s >= 0 && s <= group_size, "alpha likelihood: count out of range");
    const double t1 = std::clamp(tau1[j], kTauClamp, 1.0 - kTauClamp);
    ll += special::log_rising(alpha0 * t1, s) + special::log_rising(alpha0 * (1.0 - t1), group_size - s) -
          special::log_factorial(s) - special::log_factorial(group_size - s);
  }
  return ll + static_cast<double>(tau1.size()) * (lf_m - lr_alpha);
}

AlphaEstimate estimate_alpha0(std::span<const double> tau1, std::span<const long> positive,
                              long group_size, const AlphaSearch& search) {
  if (group_size < 2) {
    throw IdentifiabilityError(
        "alpha0 is not identifiable with a single annotator: the vote distribution does not "
        "depend on it");
  }
  NOISYLAB_EXPECTS(!tau1.empty(), "estimate_alpha0: no observations");
  NOISYLAB_EXPECTS(search.lo > 0.0 && search.hi > search.lo && search.grid_points >= 3,
                   "estimate_alpha0: invalid search range");

  NOISYLAB_EXPECTS(tau1.size() == positive.size(), "estimate_alpha0: length mismatch");

  // Rows sorted by (s, τ) so the summation order, and hence the estimate, does
  // not depend on the input order.
  std::vector<std::size_t> order(tau1.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t k) {
    return positive[i] != positive[k] ? positive[i] < positive[k] : tau1[i] < tau1[k];
  });
  std::vector<double> tau_sorted(order.size());
  std::vector<long> pos_sorted(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    tau_sorted[i] = tau1[order[i]];
    pos_sorted[i] = positive[order[i]];
  }

  const double a = std::log(search.lo);
  const double b = std::log(search.hi);
  auto objective = [&](double log_alpha) {
    return alpha_log_likelihood(tau_sorted, pos_sorted, group_size, std::exp(log_alpha));
  };

  const int k = search.grid_points;
  std::vector<double> grid(static_cast<std::size_t>(k));
  std::vector<double> values(grid.size());
  for (int i = 0; i < k; ++i) {
    grid[static_cast<std::size_t>(i)] = a + (b - a) * i / (k - 1);
    values[static_cast<std::size_t>(i)] = objective(grid[static_cast<std::size_t>(i)]);
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  if (!(*hi_it - *lo_it >= 1e-10)) {
    throw DegeneracyError("the alpha0 likelihood is flat over the search range");
  }
  const auto best = static_cast<std::size_t>(hi_it - values.begin());

  // Golden section on the bracket around the best grid point.
  double left = grid[best == 0 ? 0 : best - 1];
  double right = grid[std::min(best + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - inv_phi * (right - left);
  double x2 = left + inv_phi * (right - left);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (right - left > search.tolerance) {
    if (f1 < f2) {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + inv_phi * (right - left);
      f2 = objective(x2);
    } else {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - inv_phi * (right - left);
      f1 = objective(x1);
    }
  }

  // Keep the best of the refined point and the bracketing grid values.
  double best_x = f1 >= f2 ? x1 : x2;
  double best_f = std::max(f1, f2);
  for (std::size_t i : {best == 0 ? 0 : best - 1, best, std::min(best + 1, grid.size() - 1)}) {
    if (values[i] > best_f) {
      best_f = values[i];
      best_x = grid[i];
    }
  }

  AlphaEstimate out;
  out.alpha0_hat = std::clamp(std::exp(best_x), search.lo, search.hi);
  out.log_likelihood = best_f;
  if (best_x - a < search.boundary_margin) {
    out.boundary = Boundary::Lower;
  } else if (b - best_x < search.boundary_margin) {
    out.boundary = Boundary::Upper;
  }
  out.boundary_flag = out.boundary != Boundary::None;
  return out;
}

namespace {

std::vector<double> fitted_tau1(const DesignMatrix& x, const LogisticModel& beta) {
  auto eta = linear_predictors(x, beta);
  for (double& e : eta) e = special::sigmoid(e);
  return eta;
}

std::vector<long> positive_counts(const BinomialResponse& votes) {
  std::vector<long> out(static_cast<std::size_t>(votes.size()));
  for (Eigen::Index j = 0; j < votes.size(); ++j) {
    out[static_cast<std::size_t>(j)] = std::lround(votes.positive()[j]);
  }
  return out;
}

}  // namespace

AlphaEstimate estimate_alpha0(const DesignMatrix& x, const BinomialResponse& votes,
                              const LogisticModel& beta_hat, const AlphaSearch& search) {
  NOISYLAB_EXPECTS(votes.size() == x.rows(), "estimate_alpha0: response length mismatch");
  const auto tau = fitted_tau1(x, beta_hat);
  const auto pos = positive_counts(votes);
  return estimate_alpha0(tau, pos, votes.trials(), search);
}

AlphaBootstrap bootstrap_alpha0(const LabelledDataset& data, const LogisticModel& beta_hat,
                                const AlphaBootstrapOptions& o) {
  NOISYLAB_EXPECTS(o.resamples >= 100, "bootstrap_alpha0: need at least 100 resamples");
  NOISYLAB_EXPECTS(o.level > 0.0 && o.level < 1.0, "bootstrap_alpha0: level must be in (0,1)");
  NOISYLAB_EXPECTS(data.votes.has_value(), "bootstrap_alpha0: dataset has no votes");
  NOISYLAB_EXPECTS(o.source != BetaSource::GroundTruth || data.labels.has_value(),
                   "bootstrap_alpha0: ground-truth refits need labels");
  if (data.group_size < 2) {
    throw IdentifiabilityError("alpha0 is not identifiable with a single annotator");
  }

  const auto n = static_cast<std::size_t>(data.rows());
  const long max_failures = o.resamples / 20;
  std::vector<double> estimates(static_cast<std::size_t>(o.resamples));
  std::vector<long> failures(estimates.size(), 0);

  parallel_for(estimates.size(), o.threads, [&](std::size_t b) {
    Rng rng = Rng::stream(o.seed, b);
    std::vector<std::size_t> rows(n);
    for (;;) {
      for (auto& r : rows) r = static_cast<std::size_t>(rng.uniform_index(n));
      try {
        const LabelledDataset sample = data.subset(rows);
        const DesignMatrix x = sample.design();
        LogisticModel beta = beta_hat;
        if (o.source != BetaSource::Fixed) {
          const FitResult f = fit(x, o.source == BetaSource::GroundTruth ? sample.label_response()
                                                                        : sample.vote_response());
          if (!f.converged) throw ConvergenceError("bootstrap refit did not converge");
          beta = f.model;
        }
        estimates[b] = estimate_alpha0(x, sample.vote_response(), beta, o.search).alpha0_hat;
        return;
      } catch (const IdentifiabilityError&) {
        throw;
      } catch (const Error&) {
        // Redraw this resample; the per-resample count caps the loop.
        if (++failures[b] > max_failures) {
          throw ConvergenceError(fmt::format("bootstrap_alpha0: resample {} failed {} times", b,
                                             failures[b]));
        }
      }
    }
  });

  AlphaBootstrap out;
  for (long f : failures) out.failures += f;
  if (out.failures > max_failures) {
    throw ConvergenceError(fmt::format("bootstrap_alpha0: {} of {} resamples failed",
                                       out.failures, o.resamples));
  }
  out.estimates = std::move(estimates);
  out.ci_lo = stats::quantile(out.estimates, 0.5 * (1.0 - o.level));
  out.ci_hi = stats::quantile(out.estimates, 0.5 * (1.0 + o.level));
  return out;
}

}  // namespace noisylab

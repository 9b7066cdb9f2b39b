#include "noisylab/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "noisylab/errors.hpp"
#include "noisylab/gaussian.hpp"
#include "noisylab/logreg.hpp"
#include "noisylab/parallel.hpp"
#include "noisylab/stats.hpp"

namespace noisylab {

double theoretical_are(long m, double alpha0) {
  NOISYLAB_EXPECTS(m >= 1 && alpha0 > 0.0, "theoretical_are: need m >= 1 and alpha0 > 0");
  const double md = static_cast<double>(m);
  return md * (1.0 + alpha0) / (md + alpha0);
}

double excess_error(double err, double bayes) { return std::max(0.0, err - bayes); }

RatioBootstrap bootstrap_se_of_ratio(std::span<const ExcessPair> pairs, int resamples, Rng& rng) {
  NOISYLAB_EXPECTS(pairs.size() >= 2, "bootstrap: need at least two pairs");
  NOISYLAB_EXPECTS(resamples >= 100, "bootstrap: need at least 100 resamples");
  const std::size_t n = pairs.size();
  const long max_redraws = resamples / 100;
  RatioBootstrap out;
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(resamples));
  while (static_cast<int>(ratios.size()) < resamples) {
    double g = 0.0;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pick = pairs[rng.uniform_index(n)];
      g += pick.ground_truth;
      v += pick.votes;
    }
    if (v == 0.0) {
      if (++out.redraws > max_redraws) {
        throw ConvergenceError("bootstrap: too many resamples with a zero denominator");
      }
      continue;
    }
    ratios.push_back(g / v);
  }
  out.se = stats::sample_sd(ratios);
  return out;
}

namespace {

struct Replication {
  bool ok = false;
  ExcessPair pair;
};

}  // namespace

AreResult simulate_relative_efficiency(const AreConfig& c) {
  NOISYLAB_EXPECTS(c.replications >= 1, "AreConfig: replications must be >= 1");
  NOISYLAB_EXPECTS(c.n >= c.p + 1 && c.p >= 1, "AreConfig: need n >= p + 1");
  const GaussianProblem problem = GaussianProblem::canonical(c.delta, c.p, c.prior1);
  const LogisticModel truth = beta_from_gaussian(problem);
  const GroupModel group(c.m, c.alpha0);

  AreResult out;
  out.theoretical_are = theoretical_are(c.m, c.alpha0);
  out.bayes_error = bayes_error(problem);

  std::vector<Replication> reps(static_cast<std::size_t>(c.replications));
  parallel_for(reps.size(), c.threads, [&](std::size_t r) {
    Rng rng = Rng::stream(c.seed, r);
    const LabelledDataset data = sample_dataset(problem, c.n, rng);
    const DesignMatrix x(data.features);
    std::vector<long> votes(static_cast<std::size_t>(c.n));
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
      const auto tau = posterior_probs(x.row(j), truth);
      votes[static_cast<std::size_t>(j)] = sample_votes_dm(group, tau, rng)[0];
    }
    try {
      const FitResult g = fit(x, BinomialResponse::labels(*data.labels));
      const FitResult m = fit(x, BinomialResponse::votes(votes, c.m));
      if (!g.converged || !m.converged) return;
      reps[r].pair = {excess_error(conditional_error_rate(g.model, problem).value, out.bayes_error),
                      excess_error(conditional_error_rate(m.model, problem).value, out.bayes_error)};
      reps[r].ok = true;
    } catch (const SeparationError&) {
    } catch (const RankError&) {
    }
  });

  for (const auto& r : reps) {
    if (r.ok) {
      out.pairs.push_back(r.pair);
    } else {
      ++out.failures;
    }
  }
  if (out.failures * 20 > c.replications) {
    throw ConvergenceError(fmt::format("{} of {} replications failed to fit", out.failures,
                                       c.replications));
  }
  out.replications_used = static_cast<long>(out.pairs.size());
  double g = 0.0;
  double v = 0.0;
  for (const auto& p : out.pairs) {
    g += p.ground_truth;
    v += p.votes;
  }
  out.mean_excess_error_G = g / static_cast<double>(out.pairs.size());
  out.mean_excess_error_M = v / static_cast<double>(out.pairs.size());
  out.simulated_re = out.mean_excess_error_G / out.mean_excess_error_M;
  if (out.pairs.size() >= 2) {
    Rng boot = Rng::stream(c.seed, 0xB0075742ULL);
    out.bootstrap_se = bootstrap_se_of_ratio(out.pairs, c.bootstrap_resamples, boot).se;
  }
  return out;
}

}  // namespace noisylab

#include "noisylab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "noisylab/errors.hpp"
#include "noisylab/special.hpp"

namespace noisylab {

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  NOISYLAB_EXPECTS(probs_.size() >= 2, "ProbabilityVector: need at least two classes");
  double total = 0.0;
  for (double p : probs_) {
    NOISYLAB_EXPECTS(p >= 0.0 && p <= 1.0, "ProbabilityVector: entry outside [0,1]");
    total += p;
  }
  NOISYLAB_EXPECTS(std::abs(total - 1.0) <= 1e-12, "ProbabilityVector: entries must sum to 1");
}

ProbabilityVector ProbabilityVector::binary(double tau1) {
  NOISYLAB_EXPECTS(tau1 >= 0.0 && tau1 <= 1.0, "ProbabilityVector: entry outside [0,1]");
  return ProbabilityVector({tau1, 1.0 - tau1}, Unchecked{});
}

ProbabilityVector ProbabilityVector::clamped() const {
  std::vector<double> out(probs_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    out[i] = std::clamp(probs_[i], kTauClamp, 1.0 - kTauClamp);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return ProbabilityVector(std::move(out), Unchecked{});
}

LogisticModel::LogisticModel(double intercept_, Eigen::VectorXd slopes_)
    : intercept(intercept_), slopes(std::move(slopes_)) {
  NOISYLAB_EXPECTS(std::isfinite(intercept) && slopes.allFinite(),
                   "LogisticModel: coefficients must be finite");
}

Eigen::VectorXd LogisticModel::coefficients() const {
  Eigen::VectorXd coef(slopes.size() + 1);
  coef[0] = intercept;
  coef.tail(slopes.size()) = slopes;
  return coef;
}

LogisticModel LogisticModel::from_coefficients(const Eigen::VectorXd& coef) {
  NOISYLAB_EXPECTS(coef.size() >= 1, "LogisticModel: empty coefficient vector");
  return LogisticModel(coef[0], coef.tail(coef.size() - 1));
}

GroupModel::GroupModel(long group_size, double alpha0) : m_(group_size), alpha0_(alpha0) {
  NOISYLAB_EXPECTS(m_ >= 1, "GroupModel: group size must be at least 1");
  NOISYLAB_EXPECTS(alpha0_ > 0.0 && std::isfinite(alpha0_),
                   "GroupModel: alpha0 must be positive and finite");
}

VoteCounts::VoteCounts(std::vector<long> counts) : counts_(std::move(counts)) {
  NOISYLAB_EXPECTS(counts_.size() >= 2, "VoteCounts: need at least two classes");
  for (long c : counts_) NOISYLAB_EXPECTS(c >= 0, "VoteCounts: negative count");
}

VoteCounts VoteCounts::binary(long positive, long group_size) {
  NOISYLAB_EXPECTS(positive >= 0 && positive <= group_size, "VoteCounts: count out of range");
  return VoteCounts({positive, group_size - positive});
}

long VoteCounts::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0L); }

double linear_predictor(std::span<const double> y, const LogisticModel& model) {
  NOISYLAB_EXPECTS(static_cast<Eigen::Index>(y.size()) == model.dim(),
                   "feature vector dimension does not match the model");
  double eta = model.intercept;
  for (std::size_t k = 0; k < y.size(); ++k) eta += model.slopes[static_cast<Eigen::Index>(k)] * y[k];
  return eta;
}

ProbabilityVector posterior_probs(std::span<const double> y, const LogisticModel& model) {
  const double eta = linear_predictor(y, model);
  // 1 − σ(η) = σ(−η) keeps the small tail exact.
  return ProbabilityVector({special::sigmoid(eta), special::sigmoid(-eta)});
}

std::pair<double, double> log_posterior_probs(std::span<const double> y,
                                              const LogisticModel& model) {
  const double eta = linear_predictor(y, model);
  return {special::log_sigmoid(eta), special::log_sigmoid(-eta)};
}

double label_error_prob(const ProbabilityVector& tau) {
  double sq = 0.0;
  for (double t : tau.values()) sq += t * t;
  return std::max(0.0, 1.0 - sq);
}

OneHotLabel sample_label(const ProbabilityVector& tau, Rng& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < tau.size(); ++i) {
    cum += tau[i];
    if (u < cum) return {i};
  }
  // Skip trailing zero-probability classes that rounding could otherwise hit.
  std::size_t last = tau.size() - 1;
  while (last > 0 && tau[last] == 0.0) --last;
  return {last};
}

namespace {

std::vector<long> multinomial_counts(long trials, std::span<const double> probs, Rng& rng) {
  std::vector<long> counts(probs.size(), 0);
  long remaining = trials;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    const double p = mass > 0.0 ? std::clamp(probs[i] / mass, 0.0, 1.0) : 0.0;
    counts[i] = rng.binomial(remaining, p);
    remaining -= counts[i];
    mass -= probs[i];
  }
  counts.back() += remaining;
  return counts;
}

}  // namespace

VoteCounts sample_votes_multinomial(const GroupModel& group, const ProbabilityVector& tau,
                                    Rng& rng) {
  return VoteCounts(multinomial_counts(group.group_size(), tau.values(), rng));
}

VoteCounts sample_votes_dm(const GroupModel& group, const ProbabilityVector& tau, Rng& rng) {
  const ProbabilityVector t = tau.clamped();
  std::vector<double> logs(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    logs[i] = rng.log_gamma_variate(group.alpha0() * t[i]);
  }
  // Normalise Gamma variates in log space so tiny shapes do not collapse to 0/0.
  const double top = *std::max_element(logs.begin(), logs.end());
  double total = 0.0;
  for (double& l : logs) {
    l = std::exp(l - top);
    total += l;
  }
  for (double& l : logs) l /= total;
  return VoteCounts(multinomial_counts(group.group_size(), logs, rng));
}

double dm_log_pmf(const VoteCounts& s, const GroupModel& group, const ProbabilityVector& tau) {
  NOISYLAB_EXPECTS(s.size() == tau.size(), "dm_log_pmf: class count mismatch");
  NOISYLAB_EXPECTS(s.total() == group.group_size(), "dm_log_pmf: counts must sum to m");
  const ProbabilityVector t = tau.clamped();
  const double a0 = group.alpha0();
  double lp = special::log_factorial(group.group_size()) - special::log_rising(a0, group.group_size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    lp += special::log_rising(a0 * t[i], s[i]) - special::log_factorial(s[i]);
  }
  return lp;
}

double dm_log_pmf_binary(long positive, long group_size, double alpha0, double tau1) {
  NOISYLAB_EXPECTS(positive >= 0 && positive <= group_size, "dm_log_pmf: count out of range");
  const double t1 = std::clamp(tau1, kTauClamp, 1.0 - kTauClamp);
  const double t2 = 1.0 - t1;
  const long negative = group_size - positive;
  return special::log_factorial(group_size) - special::log_factorial(positive) -
         special::log_factorial(negative) + special::log_rising(alpha0 * t1, positive) +
         special::log_rising(alpha0 * t2, negative) - special::log_rising(alpha0, group_size);
}

double dm_variance(const GroupModel& group, double tau1) {
  NOISYLAB_EXPECTS(tau1 >= 0.0 && tau1 <= 1.0, "dm_variance: tau outside [0,1]");
  const double m = static_cast<double>(group.group_size());
  const double a0 = group.alpha0();
  return m * tau1 * (1.0 - tau1) * (m + a0) / (1.0 + a0);
}

CountInterval dm_prediction_interval(const GroupModel& group, const ProbabilityVector& tau,
                                     double level) {
  NOISYLAB_EXPECTS(level > 0.0 && level < 1.0, "prediction interval: level must be in (0,1)");
  const long m = group.group_size();
  std::vector<double> pmf(static_cast<std::size_t>(m) + 1);
  for (long s = 0; s <= m; ++s) {
    pmf[static_cast<std::size_t>(s)] = std::exp(dm_log_pmf_binary(s, m, group.alpha0(), tau[0]));
  }
  const double tail = 0.5 * (1.0 - level);
  CountInterval out{0, m};
  double below = 0.0;
  while (out.lo < m && below + pmf[static_cast<std::size_t>(out.lo)] <= tail) {
    below += pmf[static_cast<std::size_t>(out.lo)];
    ++out.lo;
  }
  double above = 0.0;
  while (out.hi > out.lo && above + pmf[static_cast<std::size_t>(out.hi)] <= tail) {
    above += pmf[static_cast<std::size_t>(out.hi)];
    --out.hi;
  }
  return out;
}

}  // namespace noisylab

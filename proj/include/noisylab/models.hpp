#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "noisylab/rng.hpp"

namespace noisylab {

// Posterior class-probabilities τ(y) over g ≥ 2 classes.
class ProbabilityVector {
 public:
  // Validates entries in [0,1] summing to one within 1e-12.
  explicit ProbabilityVector(std::vector<double> probs);
  // (τ₁, 1 − τ₁)
  static ProbabilityVector binary(double tau1);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const { return probs_; }

  // Entries clamped to [1e-12, 1 − 1e-12] and renormalised; the form used
  // whenever Dirichlet parameters α₀τᵢ are built.
  ProbabilityVector clamped() const;

 private:
  struct Unchecked {};
  ProbabilityVector(std::vector<double> probs, Unchecked) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

inline constexpr double kTauClamp = 1e-12;

// β = (β₀, β₁ᵀ)ᵀ of the two-class logistic posterior.
struct LogisticModel {
  double intercept = 0.0;
  Eigen::VectorXd slopes;

  LogisticModel() = default;
  LogisticModel(double intercept, Eigen::VectorXd slopes);

  Eigen::Index dim() const { return slopes.size(); }
  // (β₀, β₁ᵀ)ᵀ as one vector of length p + 1.
  Eigen::VectorXd coefficients() const;
  static LogisticModel from_coefficients(const Eigen::VectorXd& coef);
};

// Labelling group: m annotators and Dirichlet concentration α₀.
class GroupModel {
 public:
  GroupModel(long group_size, double alpha0);
  long group_size() const { return m_; }
  double alpha0() const { return alpha0_; }

 private:
  long m_;
  double alpha0_;
};

struct OneHotLabel {
  std::size_t class_index = 0;
};

// Aggregated class votes S_j for one item.
class VoteCounts {
 public:
  explicit VoteCounts(std::vector<long> counts);
  static VoteCounts binary(long positive, long group_size);

  std::size_t size() const { return counts_.size(); }
  long operator[](std::size_t i) const { return counts_[i]; }
  std::span<const long> values() const { return counts_; }
  long total() const;

  friend bool operator==(const VoteCounts&, const VoteCounts&) = default;

 private:
  std::vector<long> counts_;
};

struct CountInterval {
  long lo = 0;
  long hi = 0;
};

// η = β₀ + β₁ᵀy
double linear_predictor(std::span<const double> y, const LogisticModel& model);

// (τ₁, 1 − τ₁) with τ₁ = σ(β₀ + β₁ᵀy).
ProbabilityVector posterior_probs(std::span<const double> y, const LogisticModel& model);

// (ln τ₁, ln τ₂); finite for any finite linear predictor.
std::pair<double, double> log_posterior_probs(std::span<const double> y,
                                              const LogisticModel& model);

// Probability that a single posterior-driven label differs from the true one:
// 1 − Σ τᵢ².
double label_error_prob(const ProbabilityVector& tau);

OneHotLabel sample_label(const ProbabilityVector& tau, Rng& rng);

VoteCounts sample_votes_multinomial(const GroupModel& group, const ProbabilityVector& tau,
                                    Rng& rng);

// Dirichlet-Multinomial draw through the hierarchy p ~ Dirichlet(α₀τ),
// S | p ~ Multinomial(m, p). τ is clamped first.
VoteCounts sample_votes_dm(const GroupModel& group, const ProbabilityVector& tau, Rng& rng);

double dm_log_pmf(const VoteCounts& s, const GroupModel& group, const ProbabilityVector& tau);

// Two-class shortcut: log Pr(S₁ = positive) with τ = (tau1, 1 − tau1).
double dm_log_pmf_binary(long positive, long group_size, double alpha0, double tau1);

// Var(S₁) = m τ(1−τ)(m + α₀)/(1 + α₀)
double dm_variance(const GroupModel& group, double tau1);

// Equal-tail interval for S₁ with coverage ≥ level under the exact DM pmf:
// each excluded tail carries at most (1 − level)/2.
CountInterval dm_prediction_interval(const GroupModel& group, const ProbabilityVector& tau,
                                     double level);

}  // namespace noisylab

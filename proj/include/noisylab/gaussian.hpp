#pragma once

#include <Eigen/Dense>

#include "noisylab/dataset.hpp"
#include "noisylab/models.hpp"
#include "noisylab/rng.hpp"

namespace noisylab {

// Two normal classes with a shared covariance. Class 1 is the positive class
// (label 1, posterior τ₁).
struct GaussianProblem {
  double delta = 0.0;  // Mahalanobis separation
  double prior1 = 0.5;
  Eigen::VectorXd mu1;
  Eigen::VectorXd mu2;
  Eigen::MatrixXd sigma;

  GaussianProblem(Eigen::VectorXd mu1, Eigen::VectorXd mu2, Eigen::MatrixXd sigma, double prior1);

  // μ₁ = (Δ/2, 0, …), μ₂ = (−Δ/2, 0, …), Σ = I.
  static GaussianProblem canonical(double delta, Eigen::Index p, double prior1 = 0.5);

  Eigen::Index dim() const { return mu1.size(); }
  double prior2() const { return 1.0 - prior1; }
};

// β₁ = Σ⁻¹(μ₁ − μ₂), β₀ = −½(μ₁ + μ₂)ᵀΣ⁻¹(μ₁ − μ₂) + ln(π₁/π₂).
LogisticModel beta_from_gaussian(const GaussianProblem& problem);

// Labels ~ Bernoulli(π₁), features ~ N(μ_label, Σ).
LabelledDataset sample_dataset(const GaussianProblem& problem, Eigen::Index n, Rng& rng);

struct ErrorRate {
  double value = 0.0;
  // Set when β̂₁ = 0 and the rule reduces to the sign of the intercept.
  bool degenerate = false;
};

// Exact misclassification probability of the rule "class 1 iff β̂₀ + β̂₁ᵀy ≥ 0"
// under the problem's distribution.
ErrorRate conditional_error_rate(const LogisticModel& beta_hat, const GaussianProblem& problem);

double bayes_error(const GaussianProblem& problem);

}  // namespace noisylab

#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "noisylab/models.hpp"

namespace noisylab {

// n feature vectors of dimension p stored column-major; the leading
// intercept column of ones is implicit everywhere.
class DesignMatrix {
 public:
  explicit DesignMatrix(Eigen::MatrixXd features);

  Eigen::Index rows() const { return x_.rows(); }
  Eigen::Index dim() const { return x_.cols(); }
  // Number of coefficients, p + 1.
  Eigen::Index params() const { return x_.cols() + 1; }

  std::span<const double> column(Eigen::Index k) const {
    return {x_.col(k).data(), static_cast<std::size_t>(x_.rows())};
  }
  std::vector<double> row(Eigen::Index j) const;
  const Eigen::MatrixXd& features() const { return x_; }

 private:
  Eigen::MatrixXd x_;
};

// Positive-class counts out of `trials` per row. Ground-truth labels are the
// trials = 1 case.
class BinomialResponse {
 public:
  static BinomialResponse labels(std::span<const int> z);
  static BinomialResponse votes(std::span<const long> positive, long group_size);

  Eigen::Index size() const { return positive_.size(); }
  long trials() const { return trials_; }
  const Eigen::VectorXd& positive() const { return positive_; }
  // True when every row is unanimous (0 or `trials` positives).
  bool unanimous() const;

 private:
  BinomialResponse(Eigen::VectorXd positive, long trials)
      : positive_(std::move(positive)), trials_(trials) {}
  Eigen::VectorXd positive_;
  long trials_;
};

struct FitOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 100;
  int max_halvings = 30;
  // Opt-in ridge on the slopes: objective − ridge_penalty·‖β₁‖².
  bool ridge = false;
  double ridge_penalty = 1e-6;
  // Coefficient norm beyond which the fit is declared separated.
  double divergence_norm = 1e6;
};

struct FitResult {
  LogisticModel model;
  bool converged = false;
  int iterations = 0;
  double final_gradient_norm = 0.0;
  double log_likelihood = 0.0;
  // Objective value after each accepted iteration, starting from β = 0.
  std::vector<double> objective_path;
};

struct InformationMatrices {
  Eigen::MatrixXd H;        // n⁻¹ Σ m τ(1−τ) x̃x̃ᵀ
  Eigen::MatrixXd G;        // n⁻¹ Σ (s − mτ)² x̃x̃ᵀ
  Eigen::MatrixXd godambe;  // H G⁻¹ H
  Eigen::MatrixXd fisher;   // I_LR = n⁻¹ Σ τ(1−τ) x̃x̃ᵀ
  Eigen::MatrixXd theoretical;  // m(1+α₀)/(m+α₀) · I_LR
};

// Σ_j w_j x̃_j x̃_jᵀ, x̃_j = (1, y_j).
Eigen::MatrixXd weighted_gram(const DesignMatrix& x, std::span<const double> w);
// Σ_j r_j x̃_j
Eigen::VectorXd weighted_column_sums(const DesignMatrix& x, std::span<const double> r);
// η_j = β₀ + β₁ᵀy_j for every row.
std::vector<double> linear_predictors(const DesignMatrix& x, const LogisticModel& beta);

double log_lik_ground_truth(const DesignMatrix& x, std::span<const int> z,
                            const LogisticModel& beta);
double log_lik_votes(const DesignMatrix& x, std::span<const long> positive, long group_size,
                     const LogisticModel& beta);
double log_lik(const DesignMatrix& x, const BinomialResponse& y, const LogisticModel& beta);

// Score Σ (s_j − m τ_j) x̃_j.
Eigen::VectorXd log_lik_gradient(const DesignMatrix& x, const BinomialResponse& y,
                                 const LogisticModel& beta);
// −Σ m τ_j(1 − τ_j) x̃_j x̃_jᵀ
Eigen::MatrixXd log_lik_hessian(const DesignMatrix& x, const BinomialResponse& y,
                                const LogisticModel& beta);

// Newton-Raphson with step halving. Throws SeparationError when the
// likelihood has no finite maximiser (unless options.ridge) and RankError when
// the Hessian cannot be factorised even after jitter.
FitResult fit(const DesignMatrix& x, const BinomialResponse& y, const FitOptions& options = {});

// Empirical I_LR at beta.
Eigen::MatrixXd fisher_information(const DesignMatrix& x, const LogisticModel& beta);

// Empirical sandwich pieces at beta alongside the closed-form m(1+α₀)/(m+α₀)·I_LR.
InformationMatrices godambe_information(const DesignMatrix& x, const BinomialResponse& votes,
                                        const LogisticModel& beta, double alpha0);

// Solves A x = b for symmetric positive definite A by Cholesky, adding
// 1e-10, 1e-9, …, 1e-6 (relative to the mean diagonal) on failure.
Eigen::VectorXd solve_spd(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace noisylab

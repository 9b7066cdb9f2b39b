#include "noisylab/gaussian.hpp"

#include <cmath>

#include "noisylab/errors.hpp"
#include "noisylab/special.hpp"

namespace noisylab {

GaussianProblem::GaussianProblem(Eigen::VectorXd mu1_, Eigen::VectorXd mu2_,
                                 Eigen::MatrixXd sigma_, double prior1_)
    : prior1(prior1_), mu1(std::move(mu1_)), mu2(std::move(mu2_)), sigma(std::move(sigma_)) {
  NOISYLAB_EXPECTS(mu1.size() >= 1 && mu1.size() == mu2.size(), "GaussianProblem: mean sizes");
  NOISYLAB_EXPECTS(sigma.rows() == mu1.size() && sigma.cols() == mu1.size(),
                   "GaussianProblem: covariance shape");
  NOISYLAB_EXPECTS(prior1 >= 0.0 && prior1 <= 1.0, "GaussianProblem: prior outside [0,1]");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) throw RankError("GaussianProblem: covariance is not positive definite");
  const Eigen::VectorXd d = mu1 - mu2;
  delta = std::sqrt(d.dot(llt.solve(d)));
}

GaussianProblem GaussianProblem::canonical(double delta, Eigen::Index p, double prior1) {
  NOISYLAB_EXPECTS(delta > 0.0 && p >= 1, "canonical problem: need delta > 0 and p >= 1");
  Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd mu2 = Eigen::VectorXd::Zero(p);
  mu1[0] = delta / 2.0;
  mu2[0] = -delta / 2.0;
  GaussianProblem out(mu1, mu2, Eigen::MatrixXd::Identity(p, p), prior1);
  out.delta = delta;
  return out;
}

LogisticModel beta_from_gaussian(const GaussianProblem& problem) {
  NOISYLAB_EXPECTS(problem.prior1 > 0.0 && problem.prior1 < 1.0,
                   "beta_from_gaussian: prior must lie strictly inside (0,1)");
  Eigen::LLT<Eigen::MatrixXd> llt(problem.sigma);
  if (llt.info() != Eigen::Success) throw RankError("covariance is not positive definite");
  const Eigen::VectorXd slopes = llt.solve(problem.mu1 - problem.mu2);
  const double intercept = -0.5 * (problem.mu1 + problem.mu2).dot(slopes) +
                           std::log(problem.prior1 / problem.prior2());
  return LogisticModel(intercept, slopes);
}

LabelledDataset sample_dataset(const GaussianProblem& problem, Eigen::Index n, Rng& rng) {
  NOISYLAB_EXPECTS(n >= 1, "sample_dataset: n must be positive");
  const Eigen::Index p = problem.dim();
  const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(problem.sigma).matrixL();
  const bool identity = problem.sigma.isIdentity(0.0);

  LabelledDataset out;
  out.features.resize(n, p);
  out.labels.emplace(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < p; ++k) out.column_names.push_back("x" + std::to_string(k + 1));

  Eigen::VectorXd z(p);
  for (Eigen::Index j = 0; j < n; ++j) {
    const int label = rng.uniform() < problem.prior1 ? 1 : 0;
    (*out.labels)[static_cast<std::size_t>(j)] = label;
    for (Eigen::Index k = 0; k < p; ++k) z[k] = rng.normal();
    const Eigen::VectorXd& mu = label == 1 ? problem.mu1 : problem.mu2;
    if (identity) {
      out.features.row(j) = (mu + z).transpose();
    } else {
      out.features.row(j) = (mu + chol * z).transpose();
    }
  }
  return out;
}

ErrorRate conditional_error_rate(const LogisticModel& beta_hat, const GaussianProblem& problem) {
  NOISYLAB_EXPECTS(beta_hat.dim() == problem.dim(), "conditional_error_rate: dimension mismatch");
  const double s2 = beta_hat.slopes.dot(problem.sigma * beta_hat.slopes);
  if (!(s2 > 0.0)) {
    // Constant rule: the intercept sign decides which class is never predicted.
    return {beta_hat.intercept >= 0.0 ? problem.prior2() : problem.prior1, true};
  }
  const double s = std::sqrt(s2);
  const double at1 = (beta_hat.intercept + beta_hat.slopes.dot(problem.mu1)) / s;
  const double at2 = (beta_hat.intercept + beta_hat.slopes.dot(problem.mu2)) / s;
  return {problem.prior1 * special::normal_cdf(-at1) + problem.prior2() * special::normal_cdf(at2),
          false};
}

double bayes_error(const GaussianProblem& problem) {
  return conditional_error_rate(beta_from_gaussian(problem), problem).value;
}

}  // namespace noisylab

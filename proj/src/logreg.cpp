#include "noisylab/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "noisylab/errors.hpp"
#include "noisylab/kernels.hpp"
#include "noisylab/special.hpp"

namespace noisylab {

DesignMatrix::DesignMatrix(Eigen::MatrixXd features) : x_(std::move(features)) {
  NOISYLAB_EXPECTS(x_.rows() >= x_.cols() + 1, "DesignMatrix: need n >= p + 1 rows");
  NOISYLAB_EXPECTS(x_.allFinite(), "DesignMatrix: non-finite feature entry");
}

std::vector<double> DesignMatrix::row(Eigen::Index j) const {
  std::vector<double> out(static_cast<std::size_t>(x_.cols()));
  for (Eigen::Index k = 0; k < x_.cols(); ++k) out[static_cast<std::size_t>(k)] = x_(j, k);
  return out;
}

BinomialResponse BinomialResponse::labels(std::span<const int> z) {
  Eigen::VectorXd pos(static_cast<Eigen::Index>(z.size()));
  for (std::size_t j = 0; j < z.size(); ++j) {
    NOISYLAB_EXPECTS(z[j] == 0 || z[j] == 1, "labels must be 0 or 1");
    pos[static_cast<Eigen::Index>(j)] = z[j];
  }
  return BinomialResponse(std::move(pos), 1);
}

BinomialResponse BinomialResponse::votes(std::span<const long> positive, long group_size) {
  NOISYLAB_EXPECTS(group_size >= 1, "group size must be at least 1");
  Eigen::VectorXd pos(static_cast<Eigen::Index>(positive.size()));
  for (std::size_t j = 0; j < positive.size(); ++j) {
    NOISYLAB_EXPECTS(positive[j] >= 0 && positive[j] <= group_size,
                     fmt::format("vote count {} at row {} outside [0, {}]", positive[j], j, group_size));
    pos[static_cast<Eigen::Index>(j)] = static_cast<double>(positive[j]);
  }
  return BinomialResponse(std::move(pos), group_size);
}

bool BinomialResponse::unanimous() const {
  const double m = static_cast<double>(trials_);
  return std::all_of(positive_.begin(), positive_.end(),
                     [m](double s) { return s == 0.0 || s == m; });
}

Eigen::MatrixXd weighted_gram(const DesignMatrix& x, std::span<const double> w) {
  NOISYLAB_EXPECTS(static_cast<Eigen::Index>(w.size()) == x.rows(), "weighted_gram: length mismatch");
  const Eigen::Index q = x.params();
  Eigen::MatrixXd out(q, q);
  double total = 0.0;
  for (double v : w) total += v;
  out(0, 0) = total;
  for (Eigen::Index k = 0; k < x.dim(); ++k) {
    const auto ck = x.column(k);
    out(0, k + 1) = out(k + 1, 0) = kernels::dot(w, ck);
    for (Eigen::Index l = 0; l <= k; ++l) {
      out(k + 1, l + 1) = out(l + 1, k + 1) = kernels::weighted_dot(w, ck, x.column(l));
    }
  }
  return out;
}

Eigen::VectorXd weighted_column_sums(const DesignMatrix& x, std::span<const double> r) {
  NOISYLAB_EXPECTS(static_cast<Eigen::Index>(r.size()) == x.rows(),
                   "weighted_column_sums: length mismatch");
  Eigen::VectorXd out(x.params());
  double total = 0.0;
  for (double v : r) total += v;
  out[0] = total;
  for (Eigen::Index k = 0; k < x.dim(); ++k) out[k + 1] = kernels::dot(r, x.column(k));
  return out;
}

std::vector<double> linear_predictors(const DesignMatrix& x, const LogisticModel& beta) {
  NOISYLAB_EXPECTS(beta.dim() == x.dim(), "model dimension does not match the design");
  std::vector<double> eta(static_cast<std::size_t>(x.rows()), beta.intercept);
  for (Eigen::Index k = 0; k < x.dim(); ++k) kernels::axpy(beta.slopes[k], x.column(k), eta);
  return eta;
}

namespace {

// Per-row quantities shared by the likelihood, score and Hessian.
struct RowTerms {
  std::vector<double> weight;    // m τ(1−τ)
  std::vector<double> residual;  // s − m τ
  double log_lik = 0.0;
};

RowTerms row_terms(const DesignMatrix& x, const BinomialResponse& y, const LogisticModel& beta) {
  NOISYLAB_EXPECTS(y.size() == x.rows(), "response length does not match the design");
  const auto eta = linear_predictors(x, beta);
  const double m = static_cast<double>(y.trials());
  RowTerms out;
  out.weight.resize(eta.size());
  out.residual.resize(eta.size());
  double ll = 0.0;
  for (std::size_t j = 0; j < eta.size(); ++j) {
    const double s = y.positive()[static_cast<Eigen::Index>(j)];
    const double tau = special::sigmoid(eta[j]);
    out.weight[j] = m * tau * special::sigmoid(-eta[j]);
    out.residual[j] = s - m * tau;
    ll += s * eta[j] - m * special::softplus(eta[j]);
  }
  NOISYLAB_EXPECTS(std::isfinite(ll), "log-likelihood is not finite");
  out.log_lik = ll;
  return out;
}

double ridge_term(const FitOptions& o, const LogisticModel& beta) {
  return o.ridge ? o.ridge_penalty * beta.slopes.squaredNorm() : 0.0;
}

// Separation certificate: β itself splits unanimous rows perfectly.
bool separates(const DesignMatrix& x, const BinomialResponse& y, const LogisticModel& beta) {
  if (!y.unanimous()) return false;
  const auto eta = linear_predictors(x, beta);
  const double m = static_cast<double>(y.trials());
  for (std::size_t j = 0; j < eta.size(); ++j) {
    const bool positive = y.positive()[static_cast<Eigen::Index>(j)] == m;
    if (positive ? !(eta[j] > 0.0) : !(eta[j] < 0.0)) return false;
  }
  return true;
}

}  // namespace

double log_lik(const DesignMatrix& x, const BinomialResponse& y, const LogisticModel& beta) {
  return row_terms(x, y, beta).log_lik;
}

double log_lik_ground_truth(const DesignMatrix& x, std::span<const int> z,
                            const LogisticModel& beta) {
  return log_lik(x, BinomialResponse::labels(z), beta);
}

double log_lik_votes(const DesignMatrix& x, std::span<const long> positive, long group_size,
                     const LogisticModel& beta) {
  return log_lik(x, BinomialResponse::votes(positive, group_size), beta);
}

Eigen::VectorXd log_lik_gradient(const DesignMatrix& x, const BinomialResponse& y,
                                 const LogisticModel& beta) {
  const auto t = row_terms(x, y, beta);
  return weighted_column_sums(x, t.residual);
}

Eigen::MatrixXd log_lik_hessian(const DesignMatrix& x, const BinomialResponse& y,
                                const LogisticModel& beta) {
  const auto t = row_terms(x, y, beta);
  return -weighted_gram(x, t.weight);
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) return llt.solve(b);
  const double scale = std::max(1.0, a.diagonal().cwiseAbs().mean());
  for (double jitter = 1e-10; jitter <= 1.0001e-6; jitter *= 10.0) {
    Eigen::MatrixXd shifted = a;
    shifted.diagonal().array() += jitter * scale;
    llt.compute(shifted);
    if (llt.info() == Eigen::Success) return llt.solve(b);
  }
  throw RankError("matrix is not positive definite even after diagonal jitter");
}

FitResult fit(const DesignMatrix& x, const BinomialResponse& y, const FitOptions& options) {
  NOISYLAB_EXPECTS(y.size() == x.rows(), "response length does not match the design");
  const Eigen::Index q = x.params();
  LogisticModel beta(0.0, Eigen::VectorXd::Zero(x.dim()));

  auto objective = [&](const LogisticModel& b, RowTerms& terms) {
    terms = row_terms(x, y, b);
    return terms.log_lik - ridge_term(options, b);
  };

  RowTerms terms;
  double current = objective(beta, terms);
  FitResult result;
  result.objective_path.push_back(current);

  for (int iter = 0;; ++iter) {
    Eigen::VectorXd grad = weighted_column_sums(x, terms.residual);
    Eigen::MatrixXd info = weighted_gram(x, terms.weight);
    if (options.ridge) {
      grad.tail(q - 1) -= 2.0 * options.ridge_penalty * beta.slopes;
      info.diagonal().tail(q - 1).array() += 2.0 * options.ridge_penalty;
    }
    result.iterations = iter;
    result.final_gradient_norm = grad.lpNorm<Eigen::Infinity>();
    if (result.final_gradient_norm <= options.gradient_tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= options.max_iterations) break;

    const Eigen::VectorXd step = solve_spd(info, grad);
    const Eigen::VectorXd coef = beta.coefficients();
    double scale = 1.0;
    bool accepted = false;
    RowTerms trial_terms;
    for (int h = 0; h <= options.max_halvings; ++h, scale *= 0.5) {
      const Eigen::VectorXd cand = coef + scale * step;
      if (!cand.allFinite()) continue;
      const auto trial = LogisticModel::from_coefficients(cand);
      const double value = objective(trial, trial_terms);
      // Rounding slack for the flat top of the likelihood.
      if (value >= current - 1e-13 * (1.0 + std::abs(current))) {
        beta = trial;
        current = value;
        terms = std::move(trial_terms);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    result.objective_path.push_back(current);
    if (!options.ridge && beta.coefficients().norm() > options.divergence_norm) {
      throw SeparationError(fmt::format(
          "coefficient norm exceeded {:g} after {} iterations; the data appear separable",
          options.divergence_norm, iter + 1));
    }
  }

  if (!options.ridge && separates(x, y, beta)) {
    throw SeparationError(
        "the fitted linear predictor separates the classes perfectly; no finite maximum "
        "likelihood estimate exists (use the ridge fallback)");
  }
  result.model = beta;
  result.log_likelihood = terms.log_lik;
  return result;
}

Eigen::MatrixXd fisher_information(const DesignMatrix& x, const LogisticModel& beta) {
  const auto eta = linear_predictors(x, beta);
  std::vector<double> w(eta.size());
  for (std::size_t j = 0; j < eta.size(); ++j) {
    w[j] = special::sigmoid(eta[j]) * special::sigmoid(-eta[j]);
  }
  return weighted_gram(x, w) / static_cast<double>(x.rows());
}

InformationMatrices godambe_information(const DesignMatrix& x, const BinomialResponse& votes,
                                        const LogisticModel& beta, double alpha0) {
  NOISYLAB_EXPECTS(alpha0 > 0.0, "alpha0 must be positive");
  const auto t = row_terms(x, votes, beta);
  const double n = static_cast<double>(x.rows());
  const double m = static_cast<double>(votes.trials());
  std::vector<double> sq(t.residual.size());
  for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = t.residual[j] * t.residual[j];

  InformationMatrices out;
  out.H = weighted_gram(x, t.weight) / n;
  out.G = weighted_gram(x, sq) / n;
  out.fisher = out.H / m;
  out.theoretical = (m * (1.0 + alpha0) / (m + alpha0)) * out.fisher;

  Eigen::LLT<Eigen::MatrixXd> llt(out.G);
  if (llt.info() != Eigen::Success) {
    throw RankError("score covariance G is singular; the sandwich cannot be formed");
  }
  out.godambe = out.H * llt.solve(out.H);
  out.godambe = 0.5 * (out.godambe + out.godambe.transpose());
  return out;
}

}  // namespace noisylab

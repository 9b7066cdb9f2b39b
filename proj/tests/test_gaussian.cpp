#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "noisylab/errors.hpp"
#include "noisylab/gaussian.hpp"
#include "noisylab/rng.hpp"

using namespace noisylab;

namespace {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Closed-form error of the linear rule, written out independently.
double rule_error(double b0, const Eigen::VectorXd& b1, const GaussianProblem& pr) {
  const double s = std::sqrt(b1.dot(pr.sigma * b1));
  return pr.prior1 * phi(-(b0 + b1.dot(pr.mu1)) / s) + pr.prior2() * phi((b0 + b1.dot(pr.mu2)) / s);
}

}  // namespace

TEST_SUITE("gaussian") {
  TEST_CASE("canonical problem") {
    const auto pr = GaussianProblem::canonical(3.0, 4, 0.3);
    CHECK(pr.dim() == 4);
    CHECK(pr.mu1[0] == 1.5);
    CHECK(pr.mu2[0] == -1.5);
    CHECK(pr.mu1.tail(3).isZero());
    CHECK(pr.sigma.isIdentity());
    CHECK(pr.prior2() == doctest::Approx(0.7));
    CHECK_THROWS_AS(GaussianProblem::canonical(2.0, 2, 1.5), ContractViolation);
  }

  TEST_CASE("beta_from_gaussian examples") {
    const auto b = beta_from_gaussian(GaussianProblem::canonical(2.0, 3));
    CHECK(b.intercept == doctest::Approx(0.0));
    CHECK(b.slopes[0] == doctest::Approx(2.0));
    CHECK(b.slopes.tail(2).isZero());

    const auto c = beta_from_gaussian(GaussianProblem::canonical(1.0, 2, 0.7));
    CHECK(c.intercept == doctest::Approx(std::log(7.0 / 3.0)).epsilon(1e-14));
    CHECK(c.intercept == doctest::Approx(0.847298).epsilon(1e-6));
    CHECK(c.slopes[0] == doctest::Approx(1.0));

    const std::vector<double> mid{0.0, 0.0};
    CHECK(posterior_probs(mid, beta_from_gaussian(GaussianProblem::canonical(2.0, 2)))[0] == doctest::Approx(0.5));

    Eigen::MatrixXd sigma(2, 2);
    sigma << 2.0, 0.5, 0.5, 1.0;
    const GaussianProblem general(Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(-1.0, 0.0), sigma, 0.4);
    const auto g = beta_from_gaussian(general);
    const Eigen::Vector2d expected = sigma.inverse() * Eigen::Vector2d(2.0, 2.0);
    CHECK((g.slopes - expected).norm() < 1e-14);
    CHECK(g.intercept == doctest::Approx(-0.5 * Eigen::Vector2d(0.0, 2.0).dot(expected) + std::log(0.4 / 0.6)));

    Eigen::MatrixXd singular(2, 2);
    singular << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(beta_from_gaussian(GaussianProblem(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 0), singular, 0.5)),
                    RankError);
  }

  TEST_CASE("sample_dataset class means fall in the CLT band") {
    Rng rng(50);
    const auto data = sample_dataset(GaussianProblem::canonical(2.0, 2), 100000, rng);
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    long n1 = 0;
    for (Eigen::Index j = 0; j < data.rows(); ++j) {
      if ((*data.labels)[static_cast<std::size_t>(j)] == 1) {
        sum += data.features.row(j).transpose();
        ++n1;
      }
    }
    const Eigen::Vector2d mean = sum / static_cast<double>(n1);
    const double band = 4.0 / std::sqrt(static_cast<double>(n1));
    CHECK(std::abs(mean[0] - 1.0) < band);
    CHECK(std::abs(mean[1]) < band);
    CHECK(std::abs(n1 - 50000.0) < 4.0 * std::sqrt(100000 * 0.25));
  }

  TEST_CASE("sample_dataset edge cases and determinism") {
    Rng rng(51);
    const auto all = sample_dataset(GaussianProblem::canonical(2.0, 2, 1.0), 500, rng);
    for (int z : *all.labels) CHECK(z == 1);

    Rng a(52);
    Rng b(52);
    const auto da = sample_dataset(GaussianProblem::canonical(2.0, 3), 200, a);
    const auto db = sample_dataset(GaussianProblem::canonical(2.0, 3), 200, b);
    CHECK(*da.labels == *db.labels);
    CHECK(std::memcmp(da.features.data(), db.features.data(), sizeof(double) * 600) == 0);
  }

  TEST_CASE("conditional_error_rate examples") {
    const auto pr = GaussianProblem::canonical(2.0, 2);
    const auto r = conditional_error_rate(beta_from_gaussian(pr), pr);
    CHECK(r.value == doctest::Approx(0.15865525393145705).epsilon(1e-13));
    CHECK_FALSE(r.degenerate);

    const auto d = conditional_error_rate(LogisticModel(1.0, Eigen::VectorXd::Zero(2)), pr);
    CHECK(d.degenerate);
    CHECK(d.value == doctest::Approx(0.5));
    // Intercept sign decides; the never-predicted class is misclassified.
    const auto skew = GaussianProblem::canonical(2.0, 2, 0.3);
    CHECK(conditional_error_rate(LogisticModel(1.0, Eigen::VectorXd::Zero(2)), skew).value == doctest::Approx(0.7));
    CHECK(conditional_error_rate(LogisticModel(-1.0, Eigen::VectorXd::Zero(2)), skew).value == doctest::Approx(0.3));

    Rng rng(53);
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::Vector2d b1(rng.normal(), rng.normal());
      const double b0 = rng.normal();
      CHECK(conditional_error_rate(LogisticModel(b0, b1), skew).value ==
            doctest::Approx(rule_error(b0, b1, skew)).epsilon(1e-13));
    }
  }

  TEST_CASE("conditional_error_rate matches Monte Carlo on 1e7 points") {
    const auto pr = GaussianProblem::canonical(2.0, 2);
    std::mt19937_64 gen(20240501);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud;
    for (int rep = 0; rep < 3; ++rep) {
      const double b0 = 0.5 * nd(gen);
      const Eigen::Vector2d b1(nd(gen), nd(gen));
      const long n = 10000000;
      long wrong = 0;
      for (long i = 0; i < n; ++i) {
        const bool cls1 = ud(gen) < pr.prior1;
        const double y0 = nd(gen) + (cls1 ? 1.0 : -1.0);
        const double y1 = nd(gen);
        const bool pred1 = b0 + b1[0] * y0 + b1[1] * y1 >= 0.0;
        wrong += pred1 != cls1;
      }
      const double exact = conditional_error_rate(LogisticModel(b0, b1), pr).value;
      const double mc = static_cast<double>(wrong) / n;
      CHECK(std::abs(mc - exact) < 4.0 * std::sqrt(exact * (1 - exact) / n));
    }
  }

  TEST_CASE("bayes_error examples") {
    CHECK(bayes_error(GaussianProblem::canonical(2.0, 2)) == doctest::Approx(phi(-1.0)).epsilon(1e-13));
    CHECK(bayes_error(GaussianProblem::canonical(2.0, 2)) == doctest::Approx(0.158655).epsilon(1e-6));
    CHECK(bayes_error(GaussianProblem::canonical(4.0, 3)) == doctest::Approx(0.022750).epsilon(1e-5));
    CHECK(std::abs(bayes_error(GaussianProblem::canonical(1e-8, 2)) - 0.5) < 1e-6);
  }

  TEST_CASE("no rule beats the Bayes rule") {
    Rng rng(54);
    for (double prior : {0.5, 0.2}) {
      const auto pr = GaussianProblem::canonical(2.0, 3, prior);
      const double bayes = bayes_error(pr);
      for (int rep = 0; rep < 1000; ++rep) {
        const Eigen::Vector3d b1(rng.normal(), rng.normal(), rng.normal());
        const double b0 = 2.0 * rng.normal();
        CHECK(conditional_error_rate(LogisticModel(b0, b1), pr).value >= bayes - 1e-12);
      }
    }
  }

  TEST_CASE("error is invariant to positive scaling of the rule") {
    Rng rng(55);
    const auto pr = GaussianProblem::canonical(3.0, 2, 0.35);
    for (int rep = 0; rep < 100; ++rep) {
      const Eigen::Vector2d b1(rng.normal(), rng.normal());
      const double b0 = rng.normal();
      const double base = conditional_error_rate(LogisticModel(b0, b1), pr).value;
      for (double c : {1e-3, 0.5, 7.0, 1e4}) {
        CHECK(conditional_error_rate(LogisticModel(c * b0, c * b1), pr).value == doctest::Approx(base).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("error is invariant to joint rotations") {
    Rng rng(56);
    const auto pr = GaussianProblem::canonical(2.5, 3, 0.45);
    for (int rep = 0; rep < 50; ++rep) {
      Eigen::Matrix3d a;
      for (int i = 0; i < 9; ++i) a.data()[i] = rng.normal();
      const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();
      const Eigen::Vector3d b1(rng.normal(), rng.normal(), rng.normal());
      const double b0 = rng.normal();
      const GaussianProblem rotated(q * pr.mu1, q * pr.mu2, Eigen::Matrix3d::Identity(), pr.prior1);
      CHECK(conditional_error_rate(LogisticModel(b0, q * b1), rotated).value ==
            doctest::Approx(conditional_error_rate(LogisticModel(b0, b1), pr).value).epsilon(1e-12));
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "noisylab/errors.hpp"
#include "noisylab/experiment.hpp"
#include "noisylab/gaussian.hpp"
#include "noisylab/rng.hpp"

using namespace noisylab;

namespace {

LabelledDataset gaussian_data(double delta, Eigen::Index n, std::uint64_t seed, Eigen::Index p = 3) {
  Rng rng(seed);
  auto d = sample_dataset(GaussianProblem::canonical(delta, p), n, rng);
  // Shift and scale so standardisation has work to do.
  for (Eigen::Index k = 0; k < p; ++k) d.features.col(k) = 5.0 + (k + 1.0) * d.features.col(k).array();
  for (Eigen::Index k = 0; k < p; ++k) d.column_names.push_back("v" + std::to_string(k));
  return d;
}

double sd_over_root_n(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("misclassification_rate example") {
    Eigen::MatrixXd f(4, 1);
    f << -2.0, -0.5, 0.5, 2.0;
    const std::vector<int> z{0, 1, 1, 1};
    const DesignMatrix x(f);
    CHECK(misclassification_rate(x, z, LogisticModel(0.0, Eigen::VectorXd::Constant(1, 1.0))) == 0.25);
    CHECK(misclassification_rate(x, z, LogisticModel(-1.0, Eigen::VectorXd::Constant(1, 1.0))) == 0.5);
    // η = 0 counts as positive
    CHECK(misclassification_rate(x, z, LogisticModel(0.0, Eigen::VectorXd::Zero(1))) == 0.25);
  }

  TEST_CASE("table shape, bounds and standard errors") {
    const auto data = gaussian_data(2.0, 400, 110);
    SplitPlan plan{50, 7, 40};
    ExperimentOptions opt;
    opt.group_sizes = {5, 20};
    opt.alphas = {1.0, 100.0};
    const auto r = run_dataset_experiment(data, plan, opt);
    REQUIRE(r.cells.size() == 4);
    CHECK(r.cells[0].m == 5);
    CHECK(r.cells[0].alpha0 == 1.0);
    CHECK(r.cells[1].m == 5);
    CHECK(r.cells[1].alpha0 == 100.0);
    CHECK(r.cells[2].m == 20);
    CHECK(r.ground_truth_errors.size() == 40);
    CHECK(r.repetitions == 40);
    CHECK(r.ground_truth.se == doctest::Approx(sd_over_root_n(r.ground_truth_errors)).epsilon(1e-12));
    CHECK(r.apparent_error >= 0.0);
    CHECK(r.apparent_error <= 1.0);
    for (const auto& c : r.cells) {
      CHECK(c.error.mean >= 0.0);
      CHECK(c.error.mean <= 1.0);
      CHECK(c.error.se >= 0.0);
      CHECK(c.theoretical_are == doctest::Approx(c.m * (1.0 + c.alpha0) / (c.m + c.alpha0)));
      if (std::isfinite(c.simulated_re)) {
        CHECK(c.simulated_re == doctest::Approx((r.ground_truth.mean - r.apparent_error) /
                                                (c.error.mean - r.apparent_error)));
      } else {
        CHECK(c.error.mean <= r.apparent_error);
      }
    }
  }

  TEST_CASE("near-zero overdispersion matches the ground-truth rule") {
    const auto data = gaussian_data(2.0, 500, 111);
    SplitPlan plan{50, 8, 100};
    ExperimentOptions opt;
    opt.group_sizes = {10};
    opt.alphas = {1e-6};
    const auto r = run_dataset_experiment(data, plan, opt);
    const auto& c = r.cells[0];
    CHECK(std::abs(c.error.mean - r.ground_truth.mean) <= 2.0 * std::hypot(c.error.se, r.ground_truth.se));
  }

  TEST_CASE("results do not depend on the thread count") {
    const auto data = gaussian_data(2.0, 300, 112);
    SplitPlan plan{40, 9, 12};
    ExperimentOptions opt;
    opt.group_sizes = {5};
    opt.alphas = {10.0};
    opt.threads = 1;
    const auto a = run_dataset_experiment(data, plan, opt);
    opt.threads = 3;
    const auto b = run_dataset_experiment(data, plan, opt);
    CHECK(a.ground_truth_errors == b.ground_truth_errors);
    CHECK(a.cells[0].error.mean == b.cells[0].error.mean);
    CHECK(a.cells[0].error.se == b.cells[0].error.se);
  }

  TEST_CASE("separable training splits follow the separation policy") {
    const auto data = gaussian_data(3.5, 300, 113);
    SplitPlan plan{20, 10, 10};
    ExperimentOptions opt;
    opt.group_sizes = {5};
    opt.alphas = {10.0};
    CHECK_THROWS_AS(run_dataset_experiment(data, plan, opt), ConvergenceError);
    CHECK_THROWS_AS(run_dataset_experiment(gaussian_data(12.0, 300, 113), plan, opt), SeparationError);
    opt.on_separation = SeparationPolicy::Ridge;
    const auto r = run_dataset_experiment(data, plan, opt);
    CHECK(r.redraws == 0);
    CHECK(r.ridge_refits > 0);
    CHECK(r.ground_truth.mean < 0.15);
  }

  TEST_CASE("contract violations") {
    auto data = gaussian_data(2.0, 100, 114);
    ExperimentOptions opt;
    opt.group_sizes = {5};
    opt.alphas = {1.0};
    CHECK_THROWS_AS(run_dataset_experiment(data, SplitPlan{100, 1, 5}, opt), ContractViolation);
    CHECK_THROWS_AS(run_dataset_experiment(data, SplitPlan{50, 1, 0}, opt), ContractViolation);
    data.labels.reset();
    CHECK_THROWS_AS(run_dataset_experiment(data, SplitPlan{50, 1, 5}, opt), ContractViolation);
  }
}

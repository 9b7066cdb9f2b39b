#include "noisylab/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "noisylab/errors.hpp"

namespace noisylab::special {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;

constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5,
};

double lanczos_sum(double x) {
  double sum = 0.0;
  for (std::size_t i = kLanczos.size() - 1; i > 0; --i) {
    sum += kLanczos[i] / (x + static_cast<double>(i));
  }
  return sum + kLanczos[0];
}

constexpr long kRisingSumLimit = 256;

}  // namespace

double log_gamma(double x) {
  NOISYLAB_EXPECTS(x > 0.0 && std::isfinite(x), "log_gamma: argument must be positive and finite");
  if (x < 0.5) {
    // Γ(x)Γ(1−x) = π / sin(πx)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double tmp = x + kLanczosG + 0.5;
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (x + 0.5) * std::log(tmp) - tmp + half_log_2pi + std::log(lanczos_sum(x) / x);
}

double log_rising(double a, long k) {
  NOISYLAB_EXPECTS(a > 0.0 && k >= 0, "log_rising: need a > 0 and k >= 0");
  if (k <= kRisingSumLimit) {
    // Blocks of up to 8 factors share one log. The flush thresholds keep the
    // running product finite and normal for any a below 1e50.
    double acc = 0.0;
    if (a > 1e50) {
      for (long i = 0; i < k; ++i) acc += std::log(a + static_cast<double>(i));
      return acc;
    }
    double prod = 1.0;
    int pending = 0;
    for (long i = 0; i < k; ++i) {
      prod *= a + static_cast<double>(i);
      if (++pending == 8 || prod > 1e250 || prod < 1e-250) {
        acc += std::log(prod);
        prod = 1.0;
        pending = 0;
      }
    }
    return acc + std::log(prod);
  }
  return log_gamma(a + static_cast<double>(k)) - log_gamma(a);
}

double log_factorial(long k) {
  NOISYLAB_EXPECTS(k >= 0, "log_factorial: negative argument");
  return log_rising(1.0, k);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double log_sigmoid(double x) { return -softplus(-x); }

}  // namespace noisylab::special

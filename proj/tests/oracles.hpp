#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library.

#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace oracle {

// ∫₀¹ exp(log_f(ln x, ln(1 − x))) dx by tanh-sinh quadrature, carried out in
// log space so integrable endpoint singularities as strong as x^{-0.95} keep
// their mass right up to the endpoint.
inline double tanh_sinh_unit_log(const std::function<double(double, double)>& log_f,
                                 double h = 1.0 / 128, double t_max = 6.5) {
  const double half_pi = std::numbers::pi / 2;
  auto softplus = [](double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); };
  long double sum = 0.0L;
  const int steps = static_cast<int>(t_max / h);
  for (int i = -steps; i <= steps; ++i) {
    const double t = i * h;
    const double u = half_pi * std::sinh(t);
    // ln cosh u without overflow
    const double log_cosh = std::abs(u) + std::log1p(std::exp(-2.0 * std::abs(u))) - std::log(2.0);
    const double log_w = std::log(half_pi * std::cosh(t)) - 2.0 * log_cosh;
    const double log_lo = -softplus(-2.0 * u);
    const double log_hi = -softplus(2.0 * u);
    // dx/dt = w/2 on [0, 1]
    sum += std::exp(static_cast<long double>(log_w - std::log(2.0) + log_f(log_lo, log_hi)));
  }
  return static_cast<double>(sum * h);
}

// Upper 0.001 quantiles of χ² with 1..30 degrees of freedom.
inline constexpr double kChi2Crit999[] = {
    0.0,       10.827566, 13.815511, 16.266236, 18.466827, 20.515006, 22.457744, 24.321886,
    26.124482, 27.877165, 29.588298, 31.264134, 32.90949,  34.528179, 36.123274, 37.697298,
    39.252355, 40.790217, 42.312396, 43.820196, 45.314747, 46.797038, 48.267942, 49.728232,
    51.178598, 52.619656, 54.051962, 55.47602,  56.892285, 58.301173, 59.703064};

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  bool passes_999() const { return dof >= 1 && statistic < critical_999(dof); }

  // Table up to 30 degrees of freedom, Wilson-Hilferty beyond.
  static double critical_999(int dof) {
    if (dof <= 30) return kChi2Crit999[dof];
    const double k = dof;
    const double z = 3.090232306167813;
    const double c = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * c * c * c;
  }
};

// Goodness of fit of observed counts to probabilities. Adjacent cells with
// expected counts below 5 are pooled.
inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& probs) {
  double n = 0.0;
  for (double o : observed) n += o;
  std::vector<double> obs;
  std::vector<double> exp;
  double o_acc = 0.0;
  double e_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o_acc += observed[i];
    e_acc += probs[i] * n;
    if (e_acc >= 5.0) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (!exp.empty()) {
    obs.back() += o_acc;
    exp.back() += e_acc;
  }
  ChiSquare out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    out.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  }
  out.dof = static_cast<int>(obs.size()) - 1;
  return out;
}

// Two-sample χ² homogeneity test on paired count vectors.
inline ChiSquare chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  double na = 0.0;
  double nb = 0.0;
  for (double v : a) na += v;
  for (double v : b) nb += v;
  ChiSquare out;
  int cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double total = a[i] + b[i];
    if (total == 0.0) continue;
    const double ea = total * na / (na + nb);
    const double eb = total * nb / (na + nb);
    out.statistic += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    ++cells;
  }
  out.dof = cells - 1;
  return out;
}

// Central difference of f at x along coordinate k.
template <class F, class V>
double central_difference(F&& f, V x, int k, double h) {
  const double x0 = x[k];
  x[k] = x0 + h;
  const double up = f(x);
  x[k] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(NOISYLAB_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle

#pragma once

// Scalar special functions used throughout the library. Everything here is
// pure and reentrant (no global state such as lgamma's signgam).

namespace noisylab::special {

// ln Γ(x) for x > 0, Lanczos approximation (g = 607/128, 15 terms) with the
// reflection formula below 0.5. Relative error is below 1e-14 away from the
// zeros at 1 and 2, where the absolute error is below 1e-15.
double log_gamma(double x);

// ln Γ(a + k) − ln Γ(a), the log rising factorial. Exact summation of logs for
// modest k, which stays accurate when a is tiny (a = 1e-16 is routine here).
double log_rising(double a, long k);

// ln k!
double log_factorial(long k);

// Standard normal CDF via erfc; absolute error well under 1e-15.
double normal_cdf(double x);

// σ(x) = 1 / (1 + e^{-x}), evaluated without overflow for any finite x.
double sigmoid(double x);

// ln(1 + e^x), stable for |x| large.
double softplus(double x);

// ln σ(x) = −softplus(−x).
double log_sigmoid(double x);

}  // namespace noisylab::special

#pragma once

#include <span>

namespace noisylab::stats {

double mean(std::span<const double> x);
// Sample standard deviation (n − 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> x);
// Linear-interpolation quantile (Hyndman–Fan type 7) of unsorted data.
double quantile(std::span<const double> x, double prob);

}  // namespace noisylab::stats

#pragma once

#include <cstdint>
#include <span>

namespace noisylab {

// xoshiro256** with splitmix64 seeding. All variate generators are written
// out here so draw sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream for (seed, index); used to give every replication,
  // resample or split its own generator regardless of thread scheduling.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  // Uniform integer in [0, n), unbiased. n > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  double normal();

  // ln of a Gamma(shape, 1) variate. Shapes below one use the
  // Gamma(shape+1)·U^{1/shape} boost carried out in log space, so shapes
  // down to 1e-300 produce finite results.
  double log_gamma_variate(double shape);
  double gamma(double shape);

  // Binomial(trials, p) by CDF inversion, falling back to Bernoulli counting
  // when the inversion start term would underflow.
  long binomial(long trials, double p);

  // Fisher-Yates shuffle of an index range.
  void shuffle(std::span<std::size_t> items);

 private:
  std::uint64_t s_[4];
};

}  // namespace noisylab

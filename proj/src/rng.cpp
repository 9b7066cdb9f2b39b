#include "noisylab/rng.hpp"

#include <cmath>
#include <utility>

#include "noisylab/errors.hpp"

namespace noisylab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = index ^ 0x6a09e667f3bcc909ULL;
  const std::uint64_t salt = splitmix64(x);
  std::uint64_t y = seed;
  return Rng(splitmix64(y) ^ salt);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  NOISYLAB_EXPECTS(n > 0, "uniform_index: empty range");
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() {
  // Marsaglia polar method; the second variate is discarded so that the
  // generator carries no hidden cache.
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double Rng::log_gamma_variate(double shape) {
  NOISYLAB_EXPECTS(shape > 0.0 && std::isfinite(shape), "gamma: shape must be positive");
  if (shape < 1.0) {
    return log_gamma_variate(shape + 1.0) + std::log(uniform_open()) / shape;
  }
  // Marsaglia & Tsang.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

double Rng::gamma(double shape) { return std::exp(log_gamma_variate(shape)); }

long Rng::binomial(long trials, double p) {
  NOISYLAB_EXPECTS(trials >= 0 && p >= 0.0 && p <= 1.0, "binomial: invalid parameters");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  long k = 0;
  if (static_cast<double>(trials) * q < 500.0) {
    const double ratio = q / (1.0 - q);
    double f = std::exp(static_cast<double>(trials) * std::log1p(-q));
    double u = uniform();
    while (u > f && k < trials) {
      u -= f;
      ++k;
      f *= ratio * static_cast<double>(trials - k + 1) / static_cast<double>(k);
    }
  } else {
    for (long i = 0; i < trials; ++i) k += uniform() < q ? 1 : 0;
  }
  return flip ? trials - k : k;
}

void Rng::shuffle(std::span<std::size_t> items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace noisylab

#include "noisylab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "noisylab/errors.hpp"

namespace noisylab::kernels {

namespace scalar {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * a[i] * b[i];
  return acc;
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(NOISYLAB_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  if (const char* env = std::getenv("NOISYLAB_KERNEL")) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool backend_available(Backend backend) {
  return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  NOISYLAB_EXPECTS(backend_available(backend), "kernel backend not available on this CPU");
  current().store(backend, std::memory_order_relaxed);
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  NOISYLAB_EXPECTS(x.size() == y.size(), "axpy: length mismatch");
#ifdef NOISYLAB_HAVE_AVX2_TU
  if (active_backend() == Backend::Avx2) return avx2::axpy(a, x.data(), y.data(), x.size());
#endif
  scalar::axpy(a, x.data(), y.data(), x.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  NOISYLAB_EXPECTS(a.size() == b.size(), "dot: length mismatch");
#ifdef NOISYLAB_HAVE_AVX2_TU
  if (active_backend() == Backend::Avx2) return avx2::dot(a.data(), b.data(), a.size());
#endif
  return scalar::dot(a.data(), b.data(), a.size());
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  NOISYLAB_EXPECTS(w.size() == a.size() && a.size() == b.size(), "weighted_dot: length mismatch");
#ifdef NOISYLAB_HAVE_AVX2_TU
  if (active_backend() == Backend::Avx2) {
    return avx2::weighted_dot(w.data(), a.data(), b.data(), w.size());
  }
#endif
  return scalar::weighted_dot(w.data(), a.data(), b.data(), w.size());
}

}  // namespace noisylab::kernels

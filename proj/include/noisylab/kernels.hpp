#pragma once

// Column-wise reduction kernels behind the IRLS and information-matrix loops.
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active backend is chosen once at startup from the CPU feature
// flags; NOISYLAB_KERNEL=scalar in the environment forces the reference path.

#include <span>
#include <string_view>

namespace noisylab::kernels {

enum class Backend { Scalar, Avx2 };

bool backend_available(Backend backend);
Backend active_backend();
// Switch backends (tests and benchmarks). Throws ContractViolation if the
// requested backend is not available on this machine/build.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

// y ← y + a·x
void axpy(double a, std::span<const double> x, std::span<double> y);
// Σ a_i b_i
double dot(std::span<const double> a, std::span<const double> b);
// Σ w_i a_i b_i
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
}  // namespace avx2

}  // namespace noisylab::kernels

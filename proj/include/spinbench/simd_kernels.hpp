// simd_kernels.hpp — runtime-dispatched array kernels
//
// The hot inner loops of the project are all flat array arithmetic: the
// history dot products of the memory-kernel convolutions, the spectral filter
// application, and the ensemble accumulators. Each kernel has a scalar
// reference implementation and SIMD variants (AVX2 on x86-64, NEON on
// aarch64) selected once at startup; the scalar path is the semantic
// authority and the variants are equivalence-tested against it.
//
// Rounding contract: mul/add/add_sq/abs2_add are element-wise with one
// rounding per operation and produce bit-identical results on every backend.
// dot/cdot_split reassociate the sum (lane accumulators), so they agree with
// the scalar path only to floating-point tolerance — but are reproducible
// run-to-run for a fixed backend.
#pragma once

#include <complex>
#include <cstddef>

namespace spinbench::kern {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);
// For equivalence tests; falls back to scalar if the requested backend is
// unavailable. Not thread-safe; call before spawning workers.
void force_backend(Backend b);

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i (ar[i]+i*ai[i]) * (br[i]+i*bi[i]) over split re/im arrays
std::complex<double> cdot_split(const double* ar, const double* ai,
                                const double* br, const double* bi, std::size_t n);

// x[i] *= y[i]
void mul_inplace(double* x, const double* y, std::size_t n);

// acc[i] += x[i]
void add_inplace(double* acc, const double* x, std::size_t n);

// acc[i] += x[i]^2
void add_sq_inplace(double* acc, const double* x, std::size_t n);

// acc[i] += |x[i]|^2
void abs2_add(double* acc, const std::complex<double>* x, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
std::complex<double> cdot_split(const double* ar, const double* ai,
                                const double* br, const double* bi, std::size_t n);
void mul_inplace(double* x, const double* y, std::size_t n);
void add_inplace(double* acc, const double* x, std::size_t n);
void add_sq_inplace(double* acc, const double* x, std::size_t n);
void abs2_add(double* acc, const std::complex<double>* x, std::size_t n);
} // namespace scalar

} // namespace spinbench::kern

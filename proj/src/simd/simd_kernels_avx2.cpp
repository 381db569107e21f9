// AVX2 kernel variants. Compiled with -mavx2 -mfma; only reached after the
// runtime cpuid check in supported().
#include "spinbench/simd_kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

namespace spinbench::kern::avx2 {

bool supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d s0 = _mm256_setzero_pd();
    __m256d s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
        s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
    }
    for (; i + 4 <= n; i += 4) {
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    }
    s0 = _mm256_add_pd(s0, s1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, s0);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

std::complex<double> cdot_split(const double* ar, const double* ai,
                                const double* br, const double* bi, std::size_t n) {
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xr = _mm256_loadu_pd(ar + i);
        const __m256d xi = _mm256_loadu_pd(ai + i);
        const __m256d yr = _mm256_loadu_pd(br + i);
        const __m256d yi = _mm256_loadu_pd(bi + i);
        re = _mm256_fmadd_pd(xr, yr, re);
        re = _mm256_fnmadd_pd(xi, yi, re);
        im = _mm256_fmadd_pd(xr, yi, im);
        im = _mm256_fmadd_pd(xi, yr, im);
    }
    alignas(32) double lr[4], li[4];
    _mm256_store_pd(lr, re);
    _mm256_store_pd(li, im);
    double sr = (lr[0] + lr[1]) + (lr[2] + lr[3]);
    double si = (li[0] + li[1]) + (li[2] + li[3]);
    for (; i < n; ++i) {
        sr += ar[i] * br[i] - ai[i] * bi[i];
        si += ar[i] * bi[i] + ai[i] * br[i];
    }
    return {sr, si};
}

// The element-wise kernels avoid FMA so each element sees the same single
// rounding as the scalar reference (bit-identical across backends).
void mul_inplace(double* x, const double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) x[i] *= y[i];
}

void add_inplace(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) acc[i] += x[i];
}

void add_sq_inplace(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_mul_pd(v, v)));
    }
    for (; i < n; ++i) acc[i] += x[i] * x[i];
}

void abs2_add(double* acc, const std::complex<double>* x, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // two complex values = (re0, im0, re1, im1)
        const __m256d v = _mm256_loadu_pd(d + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        const __m128d lo = _mm256_castpd256_pd128(sq);
        const __m128d hi = _mm256_extractf128_pd(sq, 1);
        // (re0^2+im0^2, re1^2+im1^2)
        const __m128d pair = _mm_add_pd(_mm_unpacklo_pd(lo, hi), _mm_unpackhi_pd(lo, hi));
        _mm_storeu_pd(acc + i, _mm_add_pd(_mm_loadu_pd(acc + i), pair));
    }
    for (; i < n; ++i) {
        const double re = d[2 * i], im = d[2 * i + 1];
        acc[i] += re * re + im * im;
    }
}

} // namespace spinbench::kern::avx2

#endif // __x86_64__

// NEON kernel variants (aarch64). Structure mirrors the scalar reference.
#include "spinbench/simd_kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace spinbench::kern::neon {

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t s0 = vdupq_n_f64(0.0);
    float64x2_t s1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 = vfmaq_f64(s0, vld1q_f64(a + i), vld1q_f64(b + i));
        s1 = vfmaq_f64(s1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double sum = vaddvq_f64(vaddq_f64(s0, s1));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

std::complex<double> cdot_split(const double* ar, const double* ai,
                                const double* br, const double* bi, std::size_t n) {
    float64x2_t re = vdupq_n_f64(0.0);
    float64x2_t im = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xr = vld1q_f64(ar + i);
        const float64x2_t xi = vld1q_f64(ai + i);
        const float64x2_t yr = vld1q_f64(br + i);
        const float64x2_t yi = vld1q_f64(bi + i);
        re = vfmaq_f64(re, xr, yr);
        re = vfmsq_f64(re, xi, yi);
        im = vfmaq_f64(im, xr, yi);
        im = vfmaq_f64(im, xi, yr);
    }
    double sr = vaddvq_f64(re);
    double si = vaddvq_f64(im);
    for (; i < n; ++i) {
        sr += ar[i] * br[i] - ai[i] * bi[i];
        si += ar[i] * bi[i] + ai[i] * br[i];
    }
    return {sr, si};
}

void mul_inplace(double* x, const double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    }
    for (; i < n; ++i) x[i] *= y[i];
}

void add_inplace(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(x + i)));
    }
    for (; i < n; ++i) acc[i] += x[i];
}

void add_sq_inplace(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t v = vld1q_f64(x + i);
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vmulq_f64(v, v)));
    }
    for (; i < n; ++i) acc[i] += x[i] * x[i];
}

void abs2_add(double* acc, const std::complex<double>* x, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t v0 = vld1q_f64(d + 2 * i);
        const float64x2_t v1 = vld1q_f64(d + 2 * i + 2);
        const float64x2_t pair = vpaddq_f64(vmulq_f64(v0, v0), vmulq_f64(v1, v1));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), pair));
    }
    for (; i < n; ++i) {
        const double re = d[2 * i], im = d[2 * i + 1];
        acc[i] += re * re + im * im;
    }
}

} // namespace spinbench::kern::neon

#endif // __aarch64__

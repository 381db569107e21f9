// AVX2 radix-2 butterfly pass: two complex lanes per iteration.
#include "spinbench/fft.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

namespace spinbench::fft_detail {

void butterflies_avx2(std::complex<double>* d, std::size_t n, std::size_t half,
                      const std::complex<double>* tw) {
    double* dd = reinterpret_cast<double*>(d);
    const double* tp = reinterpret_cast<const double*>(tw);
    for (std::size_t base = 0; base < n; base += 2 * half) {
        double* lo = dd + 2 * base;
        double* hi = dd + 2 * (base + half);
        for (std::size_t j = 0; j < half; j += 2) {
            const __m256d w = _mm256_loadu_pd(tp + 2 * j);
            const __m256d v = _mm256_loadu_pd(hi + 2 * j);
            const __m256d u = _mm256_loadu_pd(lo + 2 * j);
            const __m256d wr = _mm256_movedup_pd(w);           // (wr0, wr0, wr1, wr1)
            const __m256d wi = _mm256_permute_pd(w, 0b1111);   // (wi0, wi0, wi1, wi1)
            const __m256d vs = _mm256_permute_pd(v, 0b0101);   // (vi0, vr0, vi1, vr1)
            const __m256d t = _mm256_addsub_pd(_mm256_mul_pd(v, wr), _mm256_mul_pd(vs, wi));
            _mm256_storeu_pd(lo + 2 * j, _mm256_add_pd(u, t));
            _mm256_storeu_pd(hi + 2 * j, _mm256_sub_pd(u, t));
        }
    }
}

} // namespace spinbench::fft_detail

#endif // __x86_64__

// fft.hpp — in-place complex FFT with precomputed plans
//
// Power-of-two transforms run through FftPlan (radix-2 DIT, per-stage
// contiguous twiddle tables; scalar or AVX2 butterflies chosen from the
// active kernel backend). Dft layers Bluestein's chirp-z trick on top for
// arbitrary lengths, which the periodogram estimator needs for truncated
// traces. Plans are immutable after construction and safe to share across
// threads.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace spinbench {

std::size_t next_pow2(std::size_t n);

class FftPlan {
  public:
    // n must be a power of two (n >= 1).
    explicit FftPlan(std::size_t n);

    std::size_t size() const { return n_; }

    // Unnormalized: X[k] = sum_j x[j] exp(-2*pi*i*j*k/n).
    void forward(std::complex<double>* data) const;
    // Normalized by 1/n.
    void inverse(std::complex<double>* data) const;

  private:
    void execute(std::complex<double>* data) const;

    std::size_t n_{1};
    std::vector<std::uint32_t> bitrev_;
    std::vector<std::vector<std::complex<double>>> stage_tw_;
};

namespace fft_detail {
void butterflies_scalar(std::complex<double>* d, std::size_t n, std::size_t half,
                        const std::complex<double>* tw);
#if defined(__x86_64__)
void butterflies_avx2(std::complex<double>* d, std::size_t n, std::size_t half,
                      const std::complex<double>* tw);
#endif
} // namespace fft_detail

// Arbitrary-length DFT (Bluestein when n is not a power of two).
class Dft {
  public:
    explicit Dft(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

  private:
    std::size_t n_;
    bool pow2_;
    FftPlan plan_;                                // size n (pow2) or m (Bluestein)
    std::vector<std::complex<double>> chirp_;     // w_j = exp(-i*pi*j^2/n), j < n
    std::vector<std::complex<double>> chirp_fft_; // FFT of the wrapped conjugate chirp
};

} // namespace spinbench

#include "spinbench/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinbench/simd_kernels.hpp"

namespace spinbench {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("FftPlan: size must be a power of two");
    }
    bitrev_.resize(n_);
    std::uint32_t lg = 0;
    while ((std::size_t{1} << lg) < n_) ++lg;
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t r = 0;
        for (std::uint32_t b = 0; b < lg; ++b) r |= ((i >> b) & 1u) << (lg - 1 - b);
        bitrev_[i] = static_cast<std::uint32_t>(r);
    }
    for (std::size_t half = 1; half < n_; half <<= 1) {
        std::vector<std::complex<double>> tw(half);
        const double step = -std::numbers::pi / static_cast<double>(half);
        for (std::size_t j = 0; j < half; ++j) {
            const double a = step * static_cast<double>(j);
            tw[j] = {std::cos(a), std::sin(a)};
        }
        stage_tw_.push_back(std::move(tw));
    }
}

namespace fft_detail {

void butterflies_scalar(std::complex<double>* d, std::size_t n, std::size_t half,
                        const std::complex<double>* tw) {
    for (std::size_t base = 0; base < n; base += 2 * half) {
        std::complex<double>* lo = d + base;
        std::complex<double>* hi = d + base + half;
        for (std::size_t j = 0; j < half; ++j) {
            const std::complex<double> u = lo[j];
            const std::complex<double> t(hi[j].real() * tw[j].real() - hi[j].imag() * tw[j].imag(),
                                         hi[j].real() * tw[j].imag() + hi[j].imag() * tw[j].real());
            lo[j] = u + t;
            hi[j] = u - t;
        }
    }
}

} // namespace fft_detail

void FftPlan::execute(std::complex<double>* data) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t r = bitrev_[i];
        if (r > i) std::swap(data[i], data[r]);
    }
#if defined(__x86_64__)
    const bool use_avx2 = (kern::active_backend() == kern::Backend::avx2);
#endif
    std::size_t stage = 0;
    for (std::size_t half = 1; half < n_; half <<= 1, ++stage) {
        const std::complex<double>* tw = stage_tw_[stage].data();
#if defined(__x86_64__)
        if (use_avx2 && half >= 2) {
            fft_detail::butterflies_avx2(data, n_, half, tw);
            continue;
        }
#endif
        fft_detail::butterflies_scalar(data, n_, half, tw);
    }
}

void FftPlan::forward(std::complex<double>* data) const { execute(data); }

void FftPlan::inverse(std::complex<double>* data) const {
    for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
    execute(data);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]) * scale;
}

namespace {

std::complex<double> chirp_phase(std::size_t j, std::size_t n, double sign) {
    // exp(sign * i * pi * j^2 / n) with the quadratic reduced mod 2n to keep
    // the argument small for large j.
    const std::uint64_t q = (static_cast<std::uint64_t>(j) * j) % (2 * static_cast<std::uint64_t>(n));
    const double a = sign * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
    return {std::cos(a), std::sin(a)};
}

} // namespace

Dft::Dft(std::size_t n)
    : n_(n), pow2_(n != 0 && (n & (n - 1)) == 0), plan_(pow2_ ? n : next_pow2(2 * n - 1)) {
    if (n == 0) throw std::invalid_argument("Dft: size must be positive");
    if (pow2_) return;
    const std::size_t m = plan_.size();
    chirp_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) chirp_[j] = chirp_phase(j, n_, -1.0);
    chirp_fft_.assign(m, {0.0, 0.0});
    for (std::size_t j = 0; j < n_; ++j) {
        const std::complex<double> b = std::conj(chirp_[j]);
        chirp_fft_[j] = b;
        if (j != 0) chirp_fft_[m - j] = b;
    }
    plan_.forward(chirp_fft_.data());
}

void Dft::forward(std::complex<double>* data) const {
    if (pow2_) {
        plan_.forward(data);
        return;
    }
    const std::size_t m = plan_.size();
    std::vector<std::complex<double>> work(m, {0.0, 0.0});
    for (std::size_t j = 0; j < n_; ++j) work[j] = data[j] * chirp_[j];
    plan_.forward(work.data());
    for (std::size_t j = 0; j < m; ++j) work[j] *= chirp_fft_[j];
    plan_.inverse(work.data());
    for (std::size_t k = 0; k < n_; ++k) data[k] = work[k] * chirp_[k];
}

void Dft::inverse(std::complex<double>* data) const {
    if (pow2_) {
        plan_.inverse(data);
        return;
    }
    for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]);
    forward(data);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]) * scale;
}

} // namespace spinbench

#include "spinbench/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinbench/simd_kernels.hpp"

namespace spinbench {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void validate(const TimeGrid& grid) {
    if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) {
        throw std::invalid_argument("TimeGrid: dt must be positive");
    }
    if (grid.n < 2) throw std::invalid_argument("TimeGrid: need at least 2 samples");
}

WhiteNoise white_noise(const TimeGrid& grid, SeedSpec seed) {
    validate(grid);
    GaussianSource gauss(seed);
    const double sigma = 1.0 / std::sqrt(grid.dt);
    WhiteNoise out;
    out.grid = grid;
    for (auto& axis : out.axes) {
        axis.resize(grid.n);
        for (double& v : axis) v = sigma * gauss.next();
    }
    return out;
}

NoiseSynth::NoiseSynth(const TimeGrid& grid, const SpectrumKind& kind, const LorentzianCoupling& c)
    : grid_(grid),
      padded_(next_pow2(std::max<std::size_t>(
          grid.n, static_cast<std::size_t>(std::ceil(
                      std::max(2.0 * grid.horizon(), 8.0 * 2.0 / c.gamma) / grid.dt)) +
                      1))),
      sqrt_alpha_(std::sqrt(c.alpha)),
      plan_(padded_) {
    validate(grid);
    validate(c);
    if (kind.temperature < 0.0) throw std::invalid_argument("SpectrumKind: temperature must be >= 0");
    filter2_.resize(2 * padded_);
    filter_all_zero_ = true;
    for (std::size_t k = 0; k < padded_; ++k) {
        // Signed DFT frequency folded through |w|: the filter is even, so the
        // Hermitian symmetry of a real input's transform survives. The factor
        // 2 calibrates the synthesized two-sided density to 2 P(|w|) — P is
        // the symmetrized (half) density, and the published steady states
        // (plateau -0.31 = -L(1)) pin the full anticommutator weight.
        const std::size_t kk = std::min(k, padded_ - k);
        const double w = kTwoPi * static_cast<double>(kk) / (static_cast<double>(padded_) * grid.dt);
        const double f = std::sqrt(2.0 * power_spectrum(kind, c, w));
        if (f != 0.0) filter_all_zero_ = false;
        filter2_[2 * k] = f;
        filter2_[2 * k + 1] = f;
    }
}

NoiseTrace NoiseSynth::generate(SeedSpec seed) const {
    GaussianSource gauss(seed);
    const double sigma = 1.0 / std::sqrt(grid_.dt);

    NoiseTrace trace;
    trace.grid = grid_;
    trace.bx.resize(grid_.n);

    std::vector<std::complex<double>> buf(padded_);
    for (std::size_t j = 0; j < padded_; ++j) buf[j] = {sigma * gauss.next(), 0.0};

    if (filter_all_zero_) {
        // Exact zeros; skipping the transform keeps the frozen-dynamics cases
        // bitwise clean and costless.
        for (std::size_t k = 0; k < grid_.n; ++k) trace.bx[k] = 0.0;
    } else {
        plan_.forward(buf.data());
        kern::mul_inplace(reinterpret_cast<double*>(buf.data()), filter2_.data(), 2 * padded_);
        plan_.inverse(buf.data());

        double max_re = 0.0, max_im = 0.0;
        for (std::size_t j = 0; j < padded_; ++j) {
            max_re = std::max(max_re, std::abs(buf[j].real()));
            max_im = std::max(max_im, std::abs(buf[j].imag()));
        }
        if (max_im > 1e-10 * max_re) {
            throw std::runtime_error("colored_noise: imaginary residue exceeds 1e-10 (filter symmetry broken)");
        }
        for (std::size_t k = 0; k < grid_.n; ++k) trace.bx[k] = sqrt_alpha_ * buf[k].real();
    }

    // y and z axes are zeroed by the anisotropy, but their white seeds are
    // still drawn so the stream layout does not depend on the coupling tensor.
    for (std::size_t j = 0; j < 2 * padded_; ++j) (void)gauss.next();
    return trace;
}

NoiseTrace colored_noise(const TimeGrid& grid, const SpectrumKind& kind,
                         const LorentzianCoupling& c, SeedSpec seed) {
    return NoiseSynth(grid, kind, c).generate(seed);
}

PsdEstimate psd_estimate_axes(const std::vector<std::vector<double>>& sequences, const TimeGrid& grid) {
    if (sequences.empty()) throw std::invalid_argument("psd_estimate: need at least one trace");
    const std::size_t n = grid.n;
    for (const auto& s : sequences) {
        if (s.size() != n) throw std::invalid_argument("psd_estimate: traces must share one grid");
    }
    Dft dft(n);
    std::vector<double> acc(n, 0.0);
    std::vector<std::complex<double>> buf(n);
    for (const auto& s : sequences) {
        for (std::size_t j = 0; j < n; ++j) buf[j] = {s[j], 0.0};
        dft.forward(buf.data());
        kern::abs2_add(acc.data(), buf.data(), n);
    }
    PsdEstimate est;
    est.n_traces = sequences.size();
    est.omega.resize(n);
    est.power.resize(n);
    const double norm = grid.dt / (static_cast<double>(n) * static_cast<double>(sequences.size()));
    for (std::size_t k = 0; k < n; ++k) {
        est.omega[k] = kTwoPi * static_cast<double>(k) / (static_cast<double>(n) * grid.dt);
        est.power[k] = acc[k] * norm;
    }
    return est;
}

PsdEstimate psd_estimate(const std::vector<NoiseTrace>& traces) {
    if (traces.empty()) throw std::invalid_argument("psd_estimate: need at least one trace");
    const TimeGrid grid = traces.front().grid;
    std::vector<std::vector<double>> seqs;
    seqs.reserve(traces.size());
    for (const auto& tr : traces) {
        if (!(tr.grid == grid)) throw std::invalid_argument("psd_estimate: traces must share one grid");
        seqs.push_back(tr.bx);
    }
    return psd_estimate_axes(seqs, grid);
}

} // namespace spinbench

// noise.hpp — colored-noise synthesis by spectral filtering and PSD estimation
#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "spinbench/fft.hpp"
#include "spinbench/model.hpp"
#include "spinbench/rng.hpp"
#include "spinbench/vec3.hpp"

namespace spinbench {

struct TimeGrid {
    double dt{0.0};
    std::size_t n{0}; // sample count; t_k = k*dt, horizon (n-1)*dt

    double t(std::size_t k) const { return dt * static_cast<double>(k); }
    double horizon() const { return dt * static_cast<double>(n - 1); }
    bool operator==(const TimeGrid&) const = default;
};

void validate(const TimeGrid& grid); // dt > 0, n >= 2

struct WhiteNoise {
    TimeGrid grid;
    std::array<std::vector<double>, 3> axes; // i.i.d. N(0, 1/dt) per axis
};

// Per-axis Gaussian sequences with variance 1/dt, drawn axis-major (x fully,
// then y, then z) from the PCG stream of (master_seed, stream_index).
WhiteNoise white_noise(const TimeGrid& grid, SeedSpec seed);

struct NoiseTrace {
    TimeGrid grid;
    std::vector<double> bx; // y and z are identically zero under diag(sqrt(alpha),0,0)

    Vec3 sample(std::size_t k) const { return {bx[k], 0.0, 0.0}; }
};

// Shared per-configuration synthesis state: padded transform length, the
// spectral filter, and the FFT plan. Immutable after construction; generate()
// is safe to call concurrently.
//
// Calibration: the filter is sqrt(2 P(|w|)), so the synthesized x-component
// carries the two-sided spectral density 2 alpha P. P is the symmetrized
// (half) density; the published ensemble steady states correspond to the
// full anticommutator weight, which fixes the factor.
class NoiseSynth {
  public:
    NoiseSynth(const TimeGrid& grid, const SpectrumKind& kind, const LorentzianCoupling& c);

    NoiseTrace generate(SeedSpec seed) const;

    std::size_t padded_size() const { return padded_; }
    const TimeGrid& grid() const { return grid_; }

  private:
    TimeGrid grid_;
    std::size_t padded_;
    double sqrt_alpha_;
    bool filter_all_zero_;
    std::vector<double> filter2_; // sqrt(P(|w_k|)) duplicated per complex bin
    FftPlan plan_;
};

NoiseTrace colored_noise(const TimeGrid& grid, const SpectrumKind& kind,
                         const LorentzianCoupling& c, SeedSpec seed);

struct PsdEstimate {
    std::vector<double> omega; // w_k = 2 pi k/(n dt); k > n/2 alias to negative frequencies
    std::vector<double> power;
    std::size_t n_traces{0};
};

// Averaged periodogram, normalized so raw white noise (variance 1/dt) sits at 1.
PsdEstimate psd_estimate(const std::vector<NoiseTrace>& traces);
PsdEstimate psd_estimate_axes(const std::vector<std::vector<double>>& sequences, const TimeGrid& grid);

} // namespace spinbench

// analysis.hpp — decay-rate fits, plateaus, oscillation frequencies, curve distances
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace spinbench {

struct Series {
    std::vector<double> t;
    std::vector<double> y;
};

void validate(const Series& s); // equal sizes, >= 2 points, finite values, increasing t

struct DecayFit {
    double rate{0.0};       // magnitude of the fitted exponential rate
    double window_lo{0.0};  // fit window [t_a, t_b]
    double window_hi{0.0};
    double residual{0.0};   // rms residual of ln-фit
    std::size_t n_points{0};
};

// Least-squares line through ln((y - floor)/(1 - floor)) over the window where
// the normalized amplitude lies in [0.2, 0.9]. Throws if fewer than 10 points
// land in the window.
DecayFit fit_decay_rate(const Series& curve, double floor);

struct SteadyState {
    double value{0.0};
    double spread{0.0}; // sample standard deviation over the tail
    bool trend_warning{false};
};

SteadyState steady_state(const Series& curve, double tail_fraction = 0.2);

struct OscillationEstimate {
    bool found{false};
    double omega{0.0};          // angular frequency from zero-crossing spacing
    double omega_spectral{0.0}; // discrete-spectrum peak cross-check
    std::size_t crossings{0};
};

// Dominant frequency via crossings of the mean (with a small hysteresis band
// against sampling noise), cross-checked against the spectrum peak. found is
// false when the curve has fewer than 3 crossings.
OscillationEstimate oscillation_frequency(const Series& curve);

// Times of local maxima with the given prominence (alternating-extrema scan:
// a maximum counts once the curve has dropped by `prominence` after it).
// Suits decaying ringing, where mean crossings saturate early.
std::vector<double> prominent_peaks(const Series& curve, double prominence);

// 2 pi / (mean peak spacing); requires >= 2 spacings with <= 30% scatter,
// otherwise returns 0 (no stable period).
double peak_interval_frequency(const Series& curve, double prominence);

struct ComparisonReport {
    std::optional<double> rate_classical;
    std::optional<double> rate_quantum;
    std::optional<double> steady_classical;
    std::optional<double> steady_quantum;
    std::optional<double> freq_classical;
    std::optional<double> freq_quantum;
    double max_dev{0.0};
    double rmse{0.0};
    std::size_t n_common{0};
};

// Distances on the overlapping time range (quantum linearly resampled onto
// the classical grid); rates/plateaus/frequencies against each curve's own
// floor. Rate fits that fail their preconditions are left unset.
ComparisonReport compare(const Series& classical, const Series& quantum);

double interp_linear(const Series& s, double t);
Series resample(const Series& s, const std::vector<double>& t_new);

} // namespace spinbench

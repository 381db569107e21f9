#include "spinbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "spinbench/fft.hpp"

namespace spinbench {

void validate(const Series& s) {
    if (s.t.size() != s.y.size()) throw std::invalid_argument("Series: t/y size mismatch");
    if (s.t.size() < 2) throw std::invalid_argument("Series: need at least 2 points");
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        if (!std::isfinite(s.t[i]) || !std::isfinite(s.y[i])) {
            throw std::invalid_argument("Series: nonfinite value");
        }
        if (i > 0 && !(s.t[i] > s.t[i - 1])) throw std::invalid_argument("Series: t must increase");
    }
}

namespace {

struct LineFit {
    double slope{0.0};
    double intercept{0.0};
    double residual_rms{0.0};
};

LineFit fit_line(const double* x, const double* y, std::size_t n) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double nn = static_cast<double>(n);
    const double det = nn * sxx - sx * sx;
    LineFit f;
    f.slope = (nn * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / nn;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        rss += r * r;
    }
    f.residual_rms = std::sqrt(rss / nn);
    return f;
}

} // namespace

DecayFit fit_decay_rate(const Series& curve, double floor) {
    validate(curve);
    const double scale = 1.0 - floor;
    if (!(scale > 0.0)) throw std::invalid_argument("fit_decay_rate: floor must be < 1");

    // Window: samples with normalized amplitude in [0.2, 0.9], taken from the
    // first descent below 0.9 until the first drop below 0.2. Brief noisy
    // excursions back above 0.9 are skipped, not treated as terminators;
    // stopping at the first sub-0.2 sample keeps plateau chatter out.
    const std::size_t n = curve.t.size();
    std::size_t begin = n;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (curve.y[i] - floor) / scale;
        if (u <= 0.9) {
            begin = i;
            break;
        }
    }
    std::size_t end = begin;
    std::vector<double> lt, lu;
    for (std::size_t i = begin; i < n; ++i) {
        const double u = (curve.y[i] - floor) / scale;
        if (u < 0.2) break;
        if (u > 0.9) continue;
        lt.push_back(curve.t[i]);
        lu.push_back(std::log(u));
        end = i;
    }
    if (lt.size() < 10) {
        throw std::runtime_error("fit_decay_rate: fewer than 10 points in the [0.2,0.9] window");
    }
    const LineFit lf = fit_line(lt.data(), lu.data(), lt.size());
    DecayFit fit;
    fit.rate = std::abs(lf.slope);
    fit.window_lo = lt.front();
    fit.window_hi = curve.t[end];
    fit.residual = lf.residual_rms;
    fit.n_points = lt.size();
    return fit;
}

SteadyState steady_state(const Series& curve, double tail_fraction) {
    validate(curve);
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
        throw std::invalid_argument("steady_state: tail_fraction must be in (0,1]");
    }
    const std::size_t n = curve.t.size();
    const std::size_t n_tail = std::max<std::size_t>(2, static_cast<std::size_t>(
                                                            std::ceil(tail_fraction * static_cast<double>(n))));
    const std::size_t begin = n - n_tail;

    double mean = 0.0;
    for (std::size_t i = begin; i < n; ++i) mean += curve.y[i];
    mean /= static_cast<double>(n_tail);

    double ss = 0.0;
    for (std::size_t i = begin; i < n; ++i) {
        const double d = curve.y[i] - mean;
        ss += d * d;
    }
    SteadyState st;
    st.value = mean;
    st.spread = std::sqrt(ss / static_cast<double>(n_tail - 1));

    const LineFit lf = fit_line(curve.t.data() + begin, curve.y.data() + begin, n_tail);
    const double trend_span = std::abs(lf.slope) * (curve.t[n - 1] - curve.t[begin]);
    const double noise = lf.residual_rms / std::sqrt(static_cast<double>(n_tail));
    st.trend_warning = trend_span > 3.0 * std::max(noise, 1e-300);
    return st;
}

OscillationEstimate oscillation_frequency(const Series& curve) {
    validate(curve);
    const std::size_t n = curve.t.size();
    double mean = 0.0;
    for (const double v : curve.y) mean += v;
    mean /= static_cast<double>(n);

    double amp = 0.0;
    for (const double v : curve.y) amp = std::max(amp, std::abs(v - mean));
    OscillationEstimate est;
    if (amp == 0.0) return est;

    // Schmitt-trigger crossing detector: a crossing counts once the deviation
    // clears 5% of the amplitude on the other side.
    const double band = 0.05 * amp;
    int state = 0;
    std::vector<double> flips;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = curve.y[i] - mean;
        if (state >= 0 && d < -band) {
            if (state == 1) flips.push_back(curve.t[i]);
            state = -1;
        } else if (state <= 0 && d > band) {
            if (state == -1) flips.push_back(curve.t[i]);
            state = 1;
        }
    }
    est.crossings = flips.size();
    if (flips.size() < 3) return est;
    const double half_period = (flips.back() - flips.front()) / static_cast<double>(flips.size() - 1);
    est.omega = std::numbers::pi / half_period;

    // Spectrum-peak cross-check.
    Dft dft(n);
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = {curve.y[i] - mean, 0.0};
    dft.forward(buf.data());
    std::size_t k_peak = 1;
    double p_peak = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double p = std::norm(buf[k]);
        if (p > p_peak) {
            p_peak = p;
            k_peak = k;
        }
    }
    const double dt = (curve.t[n - 1] - curve.t[0]) / static_cast<double>(n - 1);
    est.omega_spectral =
        2.0 * std::numbers::pi * static_cast<double>(k_peak) / (static_cast<double>(n) * dt);
    est.found = true;
    return est;
}

std::vector<double> prominent_peaks(const Series& curve, double prominence) {
    validate(curve);
    if (!(prominence > 0.0)) throw std::invalid_argument("prominent_peaks: prominence must be > 0");
    std::vector<double> peaks;
    int dir = 0; // +1 rising confirmed, -1 falling confirmed
    double vmax = curve.y[0], vmin = curve.y[0];
    double tmax = curve.t[0];
    for (std::size_t i = 1; i < curve.y.size(); ++i) {
        const double y = curve.y[i];
        if (y > vmax) {
            vmax = y;
            tmax = curve.t[i];
        }
        if (y < vmin) vmin = y;
        if (dir >= 0 && y < vmax - prominence) {
            peaks.push_back(tmax); // the maximum held and then dropped by `prominence`
            dir = -1;
            vmin = y;
        } else if (dir < 0 && y > vmin + prominence) {
            dir = +1;
            vmax = y;
            tmax = curve.t[i];
        }
    }
    return peaks;
}

double peak_interval_frequency(const Series& curve, double prominence) {
    const std::vector<double> peaks = prominent_peaks(curve, prominence);
    if (peaks.size() < 3) return 0.0;
    std::vector<double> gaps;
    for (std::size_t i = 1; i < peaks.size(); ++i) gaps.push_back(peaks[i] - peaks[i - 1]);
    double mean = 0.0;
    for (const double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    for (const double g : gaps) {
        if (std::abs(g - mean) > 0.3 * mean) return 0.0;
    }
    return 2.0 * std::numbers::pi / mean;
}

double interp_linear(const Series& s, double t) {
    const auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
    if (it == s.t.begin()) return s.y.front();
    if (it == s.t.end()) return s.y.back();
    const std::size_t hi = static_cast<std::size_t>(it - s.t.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - s.t[lo]) / (s.t[hi] - s.t[lo]);
    return s.y[lo] + w * (s.y[hi] - s.y[lo]);
}

Series resample(const Series& s, const std::vector<double>& t_new) {
    Series out;
    out.t = t_new;
    out.y.reserve(t_new.size());
    for (const double t : t_new) out.y.push_back(interp_linear(s, t));
    return out;
}

ComparisonReport compare(const Series& classical, const Series& quantum) {
    validate(classical);
    validate(quantum);
    const double lo = std::max(classical.t.front(), quantum.t.front());
    const double hi = std::min(classical.t.back(), quantum.t.back());
    if (!(hi > lo)) throw std::invalid_argument("compare: time ranges do not overlap");

    std::vector<double> t_common;
    std::vector<double> yc, yq;
    for (std::size_t i = 0; i < classical.t.size(); ++i) {
        if (classical.t[i] < lo || classical.t[i] > hi) continue;
        t_common.push_back(classical.t[i]);
        yc.push_back(classical.y[i]);
        yq.push_back(interp_linear(quantum, classical.t[i]));
    }
    if (t_common.size() < 2) throw std::invalid_argument("compare: too few common samples");

    ComparisonReport rep;
    rep.n_common = t_common.size();
    double ss = 0.0;
    for (std::size_t i = 0; i < t_common.size(); ++i) {
        const double d = std::abs(yc[i] - yq[i]);
        rep.max_dev = std::max(rep.max_dev, d);
        ss += d * d;
    }
    rep.rmse = std::sqrt(ss / static_cast<double>(t_common.size()));

    const Series sc{t_common, yc};
    const Series sq{t_common, yq};
    const SteadyState stc = steady_state(sc);
    const SteadyState stq = steady_state(sq);
    rep.steady_classical = stc.value;
    rep.steady_quantum = stq.value;
    try {
        rep.rate_classical = fit_decay_rate(sc, stc.value).rate;
    } catch (const std::exception&) {
    }
    try {
        rep.rate_quantum = fit_decay_rate(sq, stq.value).rate;
    } catch (const std::exception&) {
    }
    const OscillationEstimate oc = oscillation_frequency(sc);
    const OscillationEstimate oq = oscillation_frequency(sq);
    if (oc.found) rep.freq_classical = oc.omega;
    if (oq.found) rep.freq_quantum = oq.omega;
    return rep;
}

} // namespace spinbench

#include "spinbench/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spinbench/fft.hpp"

namespace spinbench {

namespace {

constexpr double kPi = std::numbers::pi;

double denom(const LorentzianCoupling& c, double w) {
    const double d = c.omega0 * c.omega0 - w * w;
    return d * d + w * w * c.gamma * c.gamma;
}

// 2w / expm1(w/T): the thermal part of w*coth(w/2T); limit 2T at w = 0.
double thermal_weight(double w, double temperature) {
    if (temperature <= 0.0) return 0.0;
    if (w == 0.0) return 2.0 * temperature;
    return 2.0 * w / std::expm1(w / temperature);
}

void check_quadrature_args(const LorentzianCoupling& c, double omega_max, std::size_t n_points) {
    if (omega_max < 10.0 * std::max(c.omega0, c.gamma)) {
        throw std::invalid_argument("kernel quadrature: omega_max below 10*max(omega0, gamma)");
    }
    if (n_points < 16) throw std::invalid_argument("kernel quadrature: too few points");
}

} // namespace

namespace detail {

double sinc_branch(double s, double t) {
    const double x2 = s * t * t;
    if (std::abs(x2) < 1e-6) {
        return t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0)));
    }
    if (s > 0.0) {
        const double r = std::sqrt(s);
        return std::sin(r * t) / r;
    }
    const double r = std::sqrt(-s);
    return std::sinh(r * t) / r;
}

double cos_branch(double s, double t) {
    const double x2 = s * t * t;
    if (std::abs(x2) < 1e-6) {
        return 1.0 - x2 / 2.0 * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0));
    }
    if (s > 0.0) return std::cos(std::sqrt(s) * t);
    return std::cosh(std::sqrt(-s) * t);
}

} // namespace detail

LorentzianCoupling LorentzianCoupling::checked(double omega0, double gamma, double alpha) {
    LorentzianCoupling c{omega0, gamma, alpha};
    validate(c);
    return c;
}

void validate(const LorentzianCoupling& c) {
    if (!(c.omega0 > 0.0) || !std::isfinite(c.omega0)) {
        throw std::invalid_argument("LorentzianCoupling: omega0 must be positive");
    }
    if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) {
        throw std::invalid_argument("LorentzianCoupling: gamma must be positive");
    }
    if (!(c.alpha >= 0.0) || !std::isfinite(c.alpha)) {
        throw std::invalid_argument("LorentzianCoupling: alpha must be nonnegative");
    }
}

KernelForm kernel_form(const LorentzianCoupling& c) {
    const double s = c.omega0 * c.omega0 - 0.25 * c.gamma * c.gamma;
    KernelBranch b = KernelBranch::critical;
    if (s > 0.0) b = KernelBranch::underdamped;
    if (s < 0.0) b = KernelBranch::overdamped;
    return {b, std::sqrt(std::abs(s))};
}

double coupling_density_sq(const LorentzianCoupling& c, double omega) {
    if (omega < 0.0) throw std::invalid_argument("coupling_density_sq: omega must be >= 0");
    if (omega == 0.0) return 0.0;
    return (2.0 * c.gamma / kPi) * omega * omega / denom(c, omega);
}

double power_spectrum(const SpectrumKind& kind, const LorentzianCoupling& c, double omega) {
    const double w = std::abs(omega);
    const double T = kind.temperature;
    switch (kind.form) {
        case SpectrumForm::quantum_zero_point:
            // pi c^2/(2w) coth(w/2T) = G (w + 2w/expm1(w/T)) / D(w)
            return c.gamma * (w + thermal_weight(w, T)) / denom(c, w);
        case SpectrumForm::classical_linear:
            if (T <= 0.0 || w == 0.0) return 0.0; // DC bin clamped
            return kPi * T / (w * w);
        case SpectrumForm::quantum_no_zero_point:
            if (T <= 0.0) return 0.0;
            return c.gamma * thermal_weight(w, T) / denom(c, w);
    }
    return 0.0;
}

double memory_kernel_closed(const LorentzianCoupling& c, double tau) {
    if (tau <= 0.0) return 0.0;
    const double s = c.omega0 * c.omega0 - 0.25 * c.gamma * c.gamma;
    return std::exp(-0.5 * c.gamma * tau) * detail::sinc_branch(s, tau);
}

QuadratureSpec QuadratureSpec::recommended(const LorentzianCoupling& c, double tau_min,
                                           double tau_max) {
    double omega_max = 50.0 * std::max(c.omega0, c.gamma);
    if (tau_min > 0.0) {
        omega_max = std::max(omega_max, std::min(20.0 * kPi / tau_min, 2e4 * std::max(c.omega0, c.gamma)));
    }
    // Step: >= 50 points across the Lorentzian width, and small enough that
    // the periodized kernel images at 2 pi/h - tau_max sit 1e-4 under the
    // envelope exp(-G tau/2).
    const double h_width = c.gamma / 50.0;
    const double h_alias = 0.9 * 2.0 * kPi / (2.0 * tau_max + 40.0 / c.gamma);
    const double h = std::min(h_width, h_alias);
    const std::size_t n = static_cast<std::size_t>(std::ceil(omega_max / h));
    return {omega_max, n + (n % 2)}; // even interval count for the half-grid error estimate
}

QuadratureResult memory_kernel_quadrature(const LorentzianCoupling& c, double tau,
                                          double omega_max, std::size_t n_points) {
    check_quadrature_args(c, omega_max, n_points);
    if (tau <= 0.0) return {0.0, 0.0};
    const std::size_t n = n_points + (n_points % 2);
    const double h = omega_max / static_cast<double>(n);
    const double pref = 2.0 * c.gamma / kPi;
    double sum_all = 0.0, sum_even = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        const double w = h * static_cast<double>(j);
        const double f = pref * w / denom(c, w) * std::sin(w * tau);
        sum_all += f;
        if ((j & 1) == 0) sum_even += f;
    }
    const double f_end = pref * omega_max / denom(c, omega_max) * std::sin(omega_max * tau);
    const double fine = h * (sum_all + 0.5 * f_end);
    const double coarse = 2.0 * h * (sum_even + 0.5 * f_end);
    const double tail_density = pref * omega_max / denom(c, omega_max);
    const double tail = std::min(2.0 * tail_density / tau, 0.5 * tail_density * omega_max);
    return {fine, std::abs(fine - coarse) / 3.0 + tail};
}

QuadratureResultC ww_kernel(const LorentzianCoupling& c, double tau,
                            double omega_max, std::size_t n_points) {
    check_quadrature_args(c, omega_max, n_points);
    const std::size_t n = n_points + (n_points % 2);
    const double h = omega_max / static_cast<double>(n);
    const double pref = 2.0 * c.gamma / kPi;
    std::complex<double> sum_all{0.0, 0.0}, sum_even{0.0, 0.0};
    for (std::size_t j = 1; j < n; ++j) {
        const double w = h * static_cast<double>(j);
        const double g = pref * w / denom(c, w);
        const double phase = (c.omega0 - w) * tau;
        const std::complex<double> f{g * std::cos(phase), g * std::sin(phase)};
        sum_all += f;
        if ((j & 1) == 0) sum_even += f;
    }
    const double g_end = pref * omega_max / denom(c, omega_max);
    const double phase_end = (c.omega0 - omega_max) * tau;
    const std::complex<double> f_end{g_end * std::cos(phase_end), g_end * std::sin(phase_end)};
    // Euler-Maclaurin endpoint term: the integrand g(w) e^{i(w0-w)tau} has
    // slope g'(0) e^{i w0 tau} at w = 0 (g(0) = 0), so plain trapezoid
    // carries an h^2 boundary error there.
    const double slope0 = pref / std::pow(c.omega0, 4);
    const std::complex<double> rot0{std::cos(c.omega0 * tau), std::sin(c.omega0 * tau)};
    const std::complex<double> fine = h * (sum_all + 0.5 * f_end) + (h * h / 12.0) * slope0 * rot0;
    const std::complex<double> coarse =
        2.0 * h * (sum_even + 0.5 * f_end) + (4.0 * h * h / 12.0) * slope0 * rot0;
    const double tail = (tau > 0.0) ? std::min(2.0 * g_end / tau, 0.5 * g_end * omega_max)
                                    : 0.5 * g_end * omega_max;
    const double scale = c.alpha / 8.0;
    return {scale * fine, scale * (std::abs(fine - coarse) / 3.0 + tail)};
}

std::vector<std::complex<double>> ww_kernel_table(const LorentzianCoupling& c, double dt,
                                                  std::size_t n, WwTableMode mode) {
    if (!(dt > 0.0)) throw std::invalid_argument("ww_kernel_table: dt must be positive");
    const double tau_max = dt * static_cast<double>(n);
    const QuadratureSpec spec = QuadratureSpec::recommended(c, 0.0, std::max(tau_max, dt));

    if (mode == WwTableMode::automatic) {
        const double direct_cost = static_cast<double>(n + 1) * static_cast<double>(spec.n_points);
        mode = (direct_cost > 2e8) ? WwTableMode::fft : WwTableMode::direct;
    }

    std::vector<std::complex<double>> table(n + 1);
    if (mode == WwTableMode::direct) {
        for (std::size_t k = 0; k <= n; ++k) {
            table[k] = ww_kernel(c, dt * static_cast<double>(k), spec.omega_max, spec.n_points).value;
        }
        return table;
    }

    // One zero-padded transform evaluates the same trapezoid sum at every
    // tau_k at once: choosing dw = 2 pi / (m dt) makes exp(-i w_j tau_k) a DFT.
    const double dw_req = spec.omega_max / static_cast<double>(spec.n_points);
    std::size_t m = next_pow2(static_cast<std::size_t>(std::ceil(2.0 * kPi / (dt * dw_req))));
    while (static_cast<double>(m) * dt * dw_req < 2.0 * kPi) m <<= 1; // paranoia on rounding
    double dw = 2.0 * kPi / (static_cast<double>(m) * dt);
    std::size_t j_max = static_cast<std::size_t>(std::floor(spec.omega_max / dw));
    while (j_max + 1 > m) {
        m <<= 1;
        dw = 2.0 * kPi / (static_cast<double>(m) * dt);
        j_max = static_cast<std::size_t>(std::floor(spec.omega_max / dw));
    }

    const double pref = 2.0 * c.gamma / kPi;
    std::vector<std::complex<double>> buf(m, {0.0, 0.0});
    for (std::size_t j = 1; j <= j_max; ++j) {
        const double w = dw * static_cast<double>(j);
        const double weight = (j == j_max) ? 0.5 : 1.0;
        buf[j] = {weight * pref * w / denom(c, w), 0.0};
    }
    FftPlan plan(m);
    plan.forward(buf.data());

    const double scale = c.alpha / 8.0;
    const double em_corr = dw * dw / 12.0 * pref / std::pow(c.omega0, 4); // see ww_kernel
    for (std::size_t k = 0; k <= n; ++k) {
        const double tau = dt * static_cast<double>(k);
        const double a = c.omega0 * tau;
        const std::complex<double> rot{std::cos(a), std::sin(a)};
        table[k] = scale * rot * (dw * buf[k] + em_corr);
    }
    return table;
}

RegimeReport regime_report(const LorentzianCoupling& c, double temperature) {
    if (temperature < 0.0) throw std::invalid_argument("regime_report: temperature must be >= 0");
    RegimeReport r;
    const double inf = std::numeric_limits<double>::infinity();
    r.tauK = 2.0 / c.gamma;
    r.nbar = (temperature > 0.0) ? 1.0 / std::expm1(c.omega0 / temperature) : 0.0;
    const double coth_half = 2.0 * r.nbar + 1.0; // coth(w0/2T), exactly 1 at T=0
    if (c.alpha == 0.0) {
        r.no_coupling = true;
        r.lambda = 0.0;
        r.tauPhi = inf;
        r.tauPsi = inf;
        r.mu0 = inf;
        r.muT = inf;
        return r;
    }
    r.lambda = c.alpha / (2.0 * c.gamma * c.omega0);
    r.tauPhi = 2.0 / r.lambda;
    r.tauPsi = 2.0 / (coth_half * r.lambda);
    r.mu0 = r.tauPhi / r.tauK;
    r.muT = r.mu0 / coth_half;
    return r;
}

} // namespace spinbench

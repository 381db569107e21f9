#include "spinbench/ww_ref.hpp"

#include <cmath>
#include <stdexcept>

#include "spinbench/simd_kernels.hpp"

namespace spinbench {

VolterraSolution solve_volterra(const LorentzianCoupling& c, const TimeGrid& grid,
                                const VolterraOptions& opts) {
    validate(grid);
    validate(c);
    const std::size_t n = grid.n;
    const double dt = grid.dt;
    const std::size_t steps = n - 1;

    // Kernel cached on the grid once; the discrete convolution runs over
    // split re/im history arrays stored reversed so every step is one
    // contiguous complex dot product.
    const std::vector<std::complex<double>> ktab = ww_kernel_table(c, dt, steps, opts.table_mode);
    std::vector<double> kr(steps + 1), ki(steps + 1);
    for (std::size_t m = 0; m <= steps; ++m) {
        kr[m] = ktab[m].real();
        ki[m] = ktab[m].imag();
    }

    const std::size_t rev_base = steps; // phrev[rev_base - j] = phi_j
    std::vector<double> phr_rev(steps + 1, 0.0), phi_rev(steps + 1, 0.0);

    VolterraSolution out;
    out.grid = grid;
    out.phi.resize(n);
    out.sz.resize(n);
    out.phi[0] = {1.0, 0.0};
    phr_rev[rev_base] = 1.0;
    out.max_abs_phi = 1.0;

    // Left-endpoint (Euler-consistent) convolution at t_k over j = 0..k-1:
    // sum_{m=1..k} K[m] phi[k-m].
    const auto conv_left = [&](std::size_t k) -> std::complex<double> {
        if (k == 0) return {0.0, 0.0};
        return dt * kern::cdot_split(kr.data() + 1, ki.data() + 1,
                                     phr_rev.data() + (rev_base - k) + 1,
                                     phi_rev.data() + (rev_base - k) + 1, k);
    };
    // Trapezoid weights; phi_extra stands in for the newest node when it is
    // a predictor value.
    const auto conv_trap = [&](std::size_t k, std::complex<double> phi_k) -> std::complex<double> {
        if (k == 0) return {0.0, 0.0};
        const std::complex<double> full =
            kern::cdot_split(kr.data() + 1, ki.data() + 1, phr_rev.data() + (rev_base - k) + 1,
                             phi_rev.data() + (rev_base - k) + 1, k);
        const std::complex<double> phi0{phr_rev[rev_base], phi_rev[rev_base]};
        const std::complex<double> k0{kr[0], ki[0]};
        const std::complex<double> kk{kr[k], ki[k]};
        return dt * (full - 0.5 * kk * phi0 + 0.5 * k0 * phi_k);
    };

    std::complex<double> phi = out.phi[0];
    for (std::size_t k = 0; k < steps; ++k) {
        std::complex<double> next;
        if (opts.stepper == VolterraStepper::euler) {
            next = phi - dt * conv_left(k);
        } else {
            const std::complex<double> f0 = -conv_trap(k, phi);
            const std::complex<double> pred = phi + dt * f0;
            // history for t_{k+1} with the predictor at the newest node
            phr_rev[rev_base - (k + 1)] = pred.real();
            phi_rev[rev_base - (k + 1)] = pred.imag();
            const std::complex<double> f1 = -conv_trap(k + 1, pred);
            next = phi + (0.5 * dt) * (f0 + f1);
        }
        phr_rev[rev_base - (k + 1)] = next.real();
        phi_rev[rev_base - (k + 1)] = next.imag();
        out.phi[k + 1] = next;
        out.max_abs_phi = std::max(out.max_abs_phi, std::abs(next));
        phi = next;
    }
    out.amplitude_exceeded = out.max_abs_phi > 1.0 + 1e-3;
    for (std::size_t k = 0; k < n; ++k) out.sz[k] = sz_from_amplitude(out.phi[k]);
    return out;
}

double sz_from_amplitude(std::complex<double> phi) { return 2.0 * std::norm(phi) - 1.0; }

double markovian_decay(double lambda, double t) {
    if (lambda < 0.0 || t < 0.0) throw std::invalid_argument("markovian_decay: lambda, t must be >= 0");
    return 2.0 * std::exp(-lambda * t) - 1.0;
}

double mean_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw std::invalid_argument("mean_occupation: omega must be > 0");
    if (temperature < 0.0) throw std::invalid_argument("mean_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

double high_t_decay(const HighTParams& p, double t) {
    if (t < 0.0) throw std::invalid_argument("high_t_decay: t must be >= 0");
    const double denom = 2.0 * p.nbar + 1.0;
    return (2.0 * (p.nbar + 1.0) / denom) * std::exp(-denom * p.lambda * t) - 1.0 / denom;
}

} // namespace spinbench

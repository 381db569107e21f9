#include <doctest.h>

#include <cmath>
#include <vector>

#include "spinbench/acceptance.hpp"
#include "spinbench/analysis.hpp"
#include "spinbench/ww_ref.hpp"

using namespace spinbench;

TEST_SUITE("ww_ref") {

TEST_CASE("amplitude map and the no-coupling solution") {
    CHECK(sz_from_amplitude({1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(sz_from_amplitude({0.0, 0.0}) == doctest::Approx(-1.0));
    CHECK(sz_from_amplitude({std::sqrt(0.5), 0.0}) == doctest::Approx(0.0));

    const LorentzianCoupling c{5.0, 7.5, 0.0};
    const VolterraSolution vs = solve_volterra(c, {0.01, 501});
    for (const auto& phi : vs.phi) {
        CHECK(phi.real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(phi.imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
    for (const double z : vs.sz) CHECK(z == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(vs.phi[0] == std::complex<double>{1.0, 0.0});
}

TEST_CASE("markovian decay values") {
    CHECK(markovian_decay(0.1, 0.0) == doctest::Approx(1.0));
    CHECK(markovian_decay(0.1, 1e6) == doctest::Approx(-1.0));
    CHECK(markovian_decay(0.1, 10.0) == doctest::Approx(2.0 * std::exp(-1.0) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(markovian_decay(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(markovian_decay(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("mean occupation: zero point, reference value, classical expansion") {
    CHECK(mean_occupation(5.0, 0.0) == 0.0);
    CHECK(mean_occupation(5.0, 200.0) == doctest::Approx(39.5021).epsilon(1e-4));
    for (const double ratio : {40.0, 100.0, 400.0}) {
        const double T = ratio * 5.0;
        const double approx = T / 5.0 - 0.5;
        CHECK(std::abs(mean_occupation(5.0, T) - approx) / approx < 1e-3);
    }
    CHECK_THROWS_AS(mean_occupation(0.0, 10.0), std::invalid_argument);
}

TEST_CASE("high-temperature decay: endpoints, consistency, defining ODE") {
    const HighTParams p{39.5021, 0.01};
    CHECK(high_t_decay(p, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double floor = -1.0 / (2.0 * p.nbar + 1.0);
    CHECK(high_t_decay(p, 1e7) == doctest::Approx(floor).epsilon(1e-9));

    // nbar = 0 reduces to the Markovian decay
    const HighTParams p0{0.0, 0.1};
    for (const double t : {0.0, 1.0, 5.0, 20.0}) {
        CHECK(high_t_decay(p0, t) == doctest::Approx(markovian_decay(0.1, t)).epsilon(1e-12));
    }

    // psi' = lambda (nbar - (2 nbar + 1) psi) under sz = 2 psi - 1
    const double h = 1e-5;
    for (double t = 0.1; t < 3.0; t += 0.37) {
        const double psi = 0.5 * (high_t_decay(p, t) + 1.0);
        const double dpsi = 0.5 * (high_t_decay(p, t + h) - high_t_decay(p, t - h)) / (2.0 * h);
        const double rhs = p.lambda * (p.nbar - (2.0 * p.nbar + 1.0) * psi);
        CHECK(std::abs(dpsi - rhs) < 1e-6);
    }
}

TEST_CASE("volterra: deeper in the Markovian regime tracks the exponential better") {
    // compared in amplitude-squared units; the S_z restatement doubles the
    // deviation (quadratic-start transient)
    const TimeGrid grid{0.005, 6001}; // t up to 30
    double dev75 = 0.0, dev200 = 0.0;
    for (const double gamma : {7.5, 20.0}) {
        const VolterraSolution vs = solve_volterra({5.0, gamma, gamma}, grid);
        CHECK(!vs.amplitude_exceeded);
        double dev = 0.0;
        for (std::size_t k = 0; k < grid.n; ++k) {
            dev = std::max(dev, std::abs(std::norm(vs.phi[k]) - std::exp(-0.1 * grid.t(k))));
        }
        (gamma == 7.5 ? dev75 : dev200) = dev;
    }
    CHECK(dev200 < dev75); // mu0 = 200 vs 75
    CHECK(dev200 < 0.02);
    CHECK(dev75 < 0.05);
}

TEST_CASE("volterra: euler and trapezoid converge together as dt -> 0") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    const auto max_gap = [&](double dt) {
        const TimeGrid grid{dt, static_cast<std::size_t>(std::llround(20.0 / dt)) + 1};
        VolterraOptions euler, trap;
        trap.stepper = VolterraStepper::trapezoid;
        const VolterraSolution ve = solve_volterra(c, grid, euler);
        const VolterraSolution vt = solve_volterra(c, grid, trap);
        double gap = 0.0;
        for (std::size_t k = 0; k < grid.n; ++k) gap = std::max(gap, std::abs(ve.sz[k] - vt.sz[k]));
        return gap;
    };
    const double g1 = max_gap(0.02);
    const double g2 = max_gap(0.01);
    CHECK(g2 < g1 / 1.8); // first-order scheme: gap shrinks at least ~2x
}

TEST_CASE("volterra: non-Markovian configuration rings and relaxes to the ground state") {
    const LorentzianCoupling c{5.0, 0.05, 0.05}; // mu0 = 0.5
    const TimeGrid grid{0.02, 24001};            // t up to 480
    const VolterraSolution vs = solve_volterra(c, grid);
    CHECK(!vs.amplitude_exceeded);
    CHECK(vs.max_abs_phi <= 1.0 + 1e-3);

    Series sz;
    sz.t.resize(grid.n);
    sz.y = vs.sz;
    for (std::size_t k = 0; k < grid.n; ++k) sz.t[k] = grid.t(k);

    const std::vector<double> peaks = prominent_peaks(sz, 1e-3);
    CHECK(peaks.size() >= 4); // >= 3 ring periods
    const double freq = peak_interval_frequency(sz, 1e-3);
    // vacuum-Rabi-like ringing at ~2 sqrt(K(0)); K(0) ~ alpha/(8 omega0) here
    CHECK(freq == doctest::Approx(2.0 * std::sqrt(0.05 * 0.2 / 8.0)).epsilon(0.1));
    CHECK(vs.sz.back() < -0.8); // tends toward the ground state
}

TEST_CASE("volterra: ring damping scales with the spectral width") {
    // Gamma -> 0 at fixed Gamma/alpha: the envelope rate of the ringing is
    // set by Gamma (~Gamma/2 for sz) and vanishes in the limit.
    const auto env_rate = [](double gamma) {
        const double horizon = 24.0 / gamma;
        const TimeGrid grid{0.02, static_cast<std::size_t>(std::llround(horizon / 0.02)) + 1};
        const VolterraSolution vs = solve_volterra({5.0, gamma, gamma}, grid);
        Series sz;
        sz.t.resize(grid.n);
        sz.y = vs.sz;
        for (std::size_t k = 0; k < grid.n; ++k) sz.t[k] = grid.t(k);
        return envelope_rate(sz, -1.0);
    };
    const double r1 = env_rate(0.06);
    const double r2 = env_rate(0.03);
    CHECK(r1 == doctest::Approx(0.03).epsilon(0.15));  // ~Gamma/2
    CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("volterra flags an unstable step size") {
    // absurdly coarse dt on a strong coupling drives |phi| past 1 + 1e-3
    const LorentzianCoupling c{5.0, 20.0, 2000.0};
    const VolterraSolution vs = solve_volterra(c, {0.5, 201});
    CHECK(vs.amplitude_exceeded);
}

} // TEST_SUITE

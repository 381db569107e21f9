#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "spinbench/hl_sim.hpp"
#include "spinbench/rng.hpp"

using namespace spinbench;

namespace {

// reference RK4 for ds/dt = s x field(t) with a frozen field
Vec3 rk4_const_field(Vec3 s, const Vec3& field, double dt, int steps) {
    const auto f = [&](const Vec3& v) { return cross(v, field); };
    const double h = dt / static_cast<double>(steps);
    for (int i = 0; i < steps; ++i) {
        const Vec3 k1 = f(s);
        const Vec3 k2 = f(s + 0.5 * h * k1);
        const Vec3 k3 = f(s + 0.5 * h * k2);
        const Vec3 k4 = f(s + h * k3);
        s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return s;
}

// band-limited pseudo-random forcing for convolution-equivalence checks
double smooth_path(double t, std::uint64_t seed) {
    GaussianSource g({seed, 0});
    double v = 0.0;
    for (int m = 1; m <= 6; ++m) {
        v += g.next() * std::sin(0.7 * m * t + g.next());
    }
    return v / 3.0;
}

} // namespace

TEST_SUITE("hl_sim") {

TEST_CASE("spin_step: zero field, fixed point, precession") {
    const Vec3 s{0.3, -0.4, 0.866025};
    CHECK(spin_step(s, {0.0, 0.0, 0.0}, 0.1) == s);

    // parallel spin and field: bit-exact fixed point
    const Vec3 pole{0.0, 0.0, 1.0};
    const Vec3 stepped = spin_step(pole, {0.0, 0.0, -5.0}, 0.01);
    CHECK(stepped.x == 0.0);
    CHECK(stepped.y == 0.0);
    CHECK(stepped.z == 1.0);

    // precession about z: field (0,0,-5) turns (1,0,0) toward +y
    const Vec3 out = spin_step({1.0, 0.0, 0.0}, {0.0, 0.0, -5.0}, 0.01);
    CHECK(out.x == doctest::Approx(std::cos(0.05)).epsilon(1e-12));
    CHECK(out.y == doctest::Approx(std::sin(0.05)).epsilon(1e-12));
    CHECK(out.z == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(norm(out) == doctest::Approx(1.0).epsilon(1e-15));

    // sense and magnitude against an independent ODE integration
    const Vec3 field{1.3, -0.7, 2.1};
    const Vec3 rot = spin_step(s, field, 0.02);
    const Vec3 ref = rk4_const_field(s, field, 0.02, 64);
    CHECK(std::abs(rot.x - ref.x) < 1e-10);
    CHECK(std::abs(rot.y - ref.y) < 1e-10);
    CHECK(std::abs(rot.z - ref.z) < 1e-10);
}

TEST_CASE("auxiliary oscillator: rest state, static response, convolution oracle") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    const double dt = 0.002;
    const AuxPropagator prop = AuxPropagator::make(c, dt);

    MemoryState rest{};
    rest = memory_aux_step(rest, 0.0, 0.0, prop);
    CHECK(rest.u == 0.0);
    CHECK(rest.v == 0.0);

    // constant forcing relaxes to the static response 1/omega0^2
    MemoryState m{};
    for (int i = 0; i < 20000; ++i) m = memory_aux_step(m, 1.0, 1.0, prop);
    CHECK(m.u == doctest::Approx(1.0 / 25.0).epsilon(1e-9));
    CHECK(m.v == doctest::Approx(0.0).epsilon(1e-9));

    // alpha*u tracks the direct trapezoid convolution on a smooth path
    const std::size_t n = 10001; // t up to 20
    std::vector<double> sx(n);
    for (std::size_t k = 0; k < n; ++k) sx[k] = smooth_path(dt * static_cast<double>(k), 99);
    MemoryState mm{};
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        mm = memory_aux_step(mm, sx[k], sx[k + 1], prop);
        const double direct = memory_direct(sx, c, c.alpha, dt, k + 1);
        worst = std::max(worst, std::abs(c.alpha * mm.u - direct));
        scale = std::max(scale, std::abs(direct));
    }
    CHECK(worst < 1e-4 * scale);
}

TEST_CASE("memory_direct trivial cases") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    std::vector<double> sx(100, 0.0);
    CHECK(memory_direct(sx, c, c.alpha, 0.01, 0) == 0.0);
    CHECK(memory_direct(sx, c, c.alpha, 0.01, 50) == 0.0);
    CHECK_THROWS_AS(memory_direct(sx, c, c.alpha, 0.01, 100), std::invalid_argument);
}

TEST_CASE("resonant drive saturates at the driven-oscillator response") {
    // forcing sin(w0 t): the steady convolution is the damped oscillator's
    // resonant response, amplitude 1/(w0 G), in quadrature with the drive
    const LorentzianCoupling c{5.0, 7.5, 1.0};
    const double dt = 0.002;
    const std::size_t n = 20001; // t up to 40 >> 2/G
    std::vector<double> sx(n);
    for (std::size_t k = 0; k < n; ++k) sx[k] = std::sin(c.omega0 * dt * static_cast<double>(k));
    const double amp_expected = c.alpha / (c.omega0 * c.gamma);
    double worst = 0.0;
    for (std::size_t k = n - 1600; k < n; k += 200) {
        const double t = dt * static_cast<double>(k);
        const double expected = -amp_expected * std::cos(c.omega0 * t);
        worst = std::max(worst, std::abs(memory_direct(sx, c, c.alpha, dt, k) - expected));
    }
    CHECK(worst < 0.02 * amp_expected);
}

TEST_CASE("effective field assembly and static memory limit") {
    CHECK(effective_field(0.0, {0.0, 0.0, 0.0}, {0.0, 0.0, -5.0}) == Vec3{0.0, 0.0, -5.0});
    CHECK(effective_field(0.25, {0.1, 0.0, 0.0}, {0.0, 0.0, -5.0}) == Vec3{0.35, 0.0, -5.0});

    // constant S_x = 1: memory field tends to alpha/omega0^2
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    const double dt = 0.005;
    const std::size_t n = 12001;
    std::vector<double> ones(n, 1.0);
    const double m_inf = memory_direct(ones, c, c.alpha, dt, n - 1);
    CHECK(m_inf == doctest::Approx(c.alpha / 25.0).epsilon(1e-4));
}

TEST_CASE("frozen dynamics: zero-noise spectra leave the pole bitwise untouched") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    for (const SpectrumForm form : {SpectrumForm::classical_linear, SpectrumForm::quantum_no_zero_point}) {
        HLConfig cfg = paper_hl_config(c, {form, 0.0}, {0.005, 4001});
        for (const Integrator integ : {Integrator::rotation, Integrator::heun_renormalized}) {
            cfg.integrator = integ;
            const Trajectory tr = run_trajectory(cfg, {5, 0});
            for (const Vec3& s : tr.s) {
                CHECK(s.x == 0.0);
                CHECK(s.y == 0.0);
                CHECK(s.z == 1.0);
            }
        }
    }
}

TEST_CASE("no coupling, no noise: pure Larmor precession keeps S_z") {
    LorentzianCoupling c{5.0, 7.5, 0.0}; // alpha = 0
    HLConfig cfg = paper_hl_config(c, {SpectrumForm::classical_linear, 0.0}, {0.001, 5001});
    cfg.s0 = {std::sin(0.4), 0.0, std::cos(0.4)};
    const Trajectory tr = run_trajectory(cfg, {6, 0});
    const double t_end = tr.grid.horizon();
    const Vec3 last = tr.s.back();
    CHECK(last.z == doctest::Approx(std::cos(0.4)).epsilon(1e-10));
    // b_ext = -5 e_z: transverse component rotates by +omega0 t
    const double phase = 5.0 * t_end;
    CHECK(last.x == doctest::Approx(std::sin(0.4) * std::cos(phase)).epsilon(1e-6));
    CHECK(last.y == doctest::Approx(std::sin(0.4) * std::sin(phase)).epsilon(1e-6));
}

TEST_CASE("zero-point noise dislodges the excited state") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    HLConfig cfg = paper_hl_config(c, {SpectrumForm::quantum_zero_point, 0.0}, {0.005, 2001});
    const Trajectory tr = run_trajectory(cfg, {7, 0});
    double min_z = 1.0;
    for (const Vec3& s : tr.s) min_z = std::min(min_z, s.z);
    CHECK(min_z < 0.999);
    const Trajectory tr2 = run_trajectory(cfg, {7, 0});
    for (std::size_t k = 0; k < tr.s.size(); ++k) CHECK(tr.s[k] == tr2.s[k]); // determinism
}

TEST_CASE("norm stays on the Bloch sphere") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    HLConfig cfg = paper_hl_config(c, {SpectrumForm::quantum_zero_point, 0.0}, {0.005, 20001});
    const Trajectory tr = run_trajectory(cfg, {8, 0});
    double worst = 0.0;
    for (const Vec3& s : tr.s) worst = std::max(worst, std::abs(norm(s) - 1.0));
    CHECK(worst < 1e-9);

    cfg.integrator = Integrator::heun_renormalized;
    const Trajectory th = run_trajectory(cfg, {8, 0});
    worst = 0.0;
    for (const Vec3& s : th.s) worst = std::max(worst, std::abs(norm(s) - 1.0));
    CHECK(worst < 1e-12);
}

TEST_CASE("memory paths agree on identical trajectories (under- and overdamped)") {
    for (const double gamma : {7.5, 20.0}) {
        const LorentzianCoupling c{5.0, gamma, gamma};
        HLConfig aux = paper_hl_config(c, {SpectrumForm::quantum_zero_point, 0.0}, {0.0025, 8001});
        HLConfig dir = aux;
        dir.memory_method = MemoryMethod::direct_convolution;
        const Trajectory ta = run_trajectory(aux, {9, 0});
        const Trajectory td = run_trajectory(dir, {9, 0});
        double worst = 0.0;
        for (std::size_t k = 0; k < ta.s.size(); ++k) {
            worst = std::max({worst, std::abs(ta.s[k].x - td.s[k].x),
                              std::abs(ta.s[k].y - td.s[k].y), std::abs(ta.s[k].z - td.s[k].z)});
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("ensembles: single-trajectory convention, determinism, stderr scaling") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    HLConfig cfg = paper_hl_config(c, {SpectrumForm::quantum_zero_point, 0.0}, {0.005, 2001});

    const EnsembleResult e1 = run_ensemble(cfg, 1, 42, 1);
    const Trajectory t0 = run_trajectory(cfg, {42, 0});
    for (std::size_t k = 0; k < e1.mean_sz.size(); ++k) {
        CHECK(e1.mean_sz[k] == t0.s[k].z);
        CHECK(e1.stderr_sz[k] == 0.0);
    }

    const EnsembleResult a = run_ensemble(cfg, 130, 42, 1);
    const EnsembleResult b = run_ensemble(cfg, 130, 42, 2);
    const EnsembleResult d = run_ensemble(cfg, 130, 42, 0);
    CHECK(std::memcmp(a.mean_sz.data(), b.mean_sz.data(), a.mean_sz.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.mean_sz.data(), d.mean_sz.data(), a.mean_sz.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.stderr_sz.data(), b.stderr_sz.data(), a.stderr_sz.size() * sizeof(double)) == 0);
    CHECK(a.config_digest == b.config_digest);

    // stderr ~ 1/sqrt(n): quadruple the count, halve the error (late times)
    const EnsembleResult big = run_ensemble(cfg, 520, 42, 0);
    const std::size_t k = 1800;
    CHECK(big.stderr_sz[k] == doctest::Approx(0.5 * a.stderr_sz[k]).epsilon(0.35));
    CHECK(std::abs(big.mean_sz[k]) <= 1.0);
}

TEST_CASE("halving dt moves the ensemble mean by less than its noise floor") {
    const LorentzianCoupling c{5.0, 7.5, 7.5};
    const std::size_t n_traj = 400;
    HLConfig coarse = paper_hl_config(c, {SpectrumForm::quantum_zero_point, 0.0}, {0.01, 2001});
    HLConfig fine = paper_hl_config(c, {SpectrumForm::quantum_zero_point, 0.0}, {0.005, 4001});
    const EnsembleResult ec = run_ensemble(coarse, n_traj, 77, 0);
    const EnsembleResult ef = run_ensemble(fine, n_traj, 78, 0);
    double num = 0.0, den = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < coarse.grid.n; k += 40) {
        const double diff = ec.mean_sz[k] - ef.mean_sz[2 * k];
        const double sigma = std::sqrt(ec.stderr_sz[k] * ec.stderr_sz[k] +
                                       ef.stderr_sz[2 * k] * ef.stderr_sz[2 * k]);
        if (sigma > 0.0) {
            num += std::abs(diff) / sigma;
            den += 1.0;
        }
        ++count;
    }
    // mean |z-score| for pure noise is sqrt(2/pi) ~ 0.8; dt bias would inflate it
    CHECK(num / den < 1.6);
}

} // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <vector>

#include "spinbench/acceptance.hpp"
#include "spinbench/analysis.hpp"
#include "spinbench/ww_ref.hpp"

using namespace spinbench;

namespace {

Series sampled(double dt, std::size_t n, double (*f)(double)) {
    Series s;
    s.t.resize(n);
    s.y.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.t[k] = dt * static_cast<double>(k);
        s.y[k] = f(s.t[k]);
    }
    return s;
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("decay-rate fit is exact on synthetic exponentials") {
    const Series mk = sampled(0.01, 10001, [](double t) { return 2.0 * std::exp(-0.1 * t) - 1.0; });
    const DecayFit fit = fit_decay_rate(mk, -1.0);
    CHECK(fit.rate == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(fit.n_points >= 10);
    CHECK(fit.residual < 1e-9);

    // occupied-bath analytic decay: rate (2 nbar + 1) lambda = 0.80
    const Series ht = sampled(0.001, 10001, [](double t) {
        const HighTParams p{39.5, 0.01};
        return high_t_decay(p, t);
    });
    const double floor = -1.0 / (2.0 * 39.5 + 1.0);
    const DecayFit hfit = fit_decay_rate(ht, floor);
    CHECK(hfit.rate == doctest::Approx(0.80).epsilon(1e-4));

    // too-narrow window fails loudly
    Series tiny{{0.0, 1.0, 2.0, 3.0}, {1.0, 0.5, 0.2, 0.1}};
    CHECK_THROWS(fit_decay_rate(tiny, 0.0));
}

TEST_CASE("steady state: constants, decayed tails, translation invariance") {
    const Series flat = sampled(0.1, 501, [](double) { return -0.31; });
    const SteadyState st = steady_state(flat);
    CHECK(st.value == doctest::Approx(-0.31).epsilon(1e-12));
    CHECK(st.spread == doctest::Approx(0.0).epsilon(1e-12));

    const Series mk = sampled(0.01, 10001, [](double t) { return 2.0 * std::exp(-0.1 * t) - 1.0; });
    CHECK(steady_state(mk).value == doctest::Approx(-1.0).epsilon(1e-3));

    Series shifted = mk;
    for (double& y : shifted.y) y += 0.17;
    CHECK(steady_state(shifted).value ==
          doctest::Approx(steady_state(mk).value + 0.17).epsilon(1e-10));

    // strong residual trend is flagged
    const Series ramp = sampled(0.01, 1001, [](double t) { return 0.1 * t; });
    CHECK(steady_state(ramp).trend_warning);
}

TEST_CASE("oscillation frequency: sinusoid, monotone input, amplitude invariance") {
    const Series sine = sampled(0.01, 3001, [](double t) { return std::sin(2.0 * t); });
    const OscillationEstimate est = oscillation_frequency(sine);
    CHECK(est.found);
    CHECK(est.omega == doctest::Approx(2.0).epsilon(0.01));
    CHECK(est.omega_spectral == doctest::Approx(2.0).epsilon(0.05));

    const Series mk = sampled(0.01, 3001, [](double t) { return 2.0 * std::exp(-0.1 * t) - 1.0; });
    CHECK(!oscillation_frequency(mk).found);

    Series scaled = sine;
    for (double& y : scaled.y) y *= 7.3;
    CHECK(oscillation_frequency(scaled).omega == doctest::Approx(est.omega).epsilon(1e-12));
}

TEST_CASE("envelope rate of a damped oscillation") {
    const Series damped = sampled(0.01, 20001, [](double t) {
        return -1.0 + 2.0 * std::exp(-0.05 * t) * std::cos(1.5 * t) * std::cos(1.5 * t);
    });
    CHECK(envelope_rate(damped, -1.0) == doctest::Approx(0.05).epsilon(0.02));
}

TEST_CASE("compare: identical inputs, constant offsets, distance symmetry") {
    const Series mk = sampled(0.01, 5001, [](double t) { return 2.0 * std::exp(-0.1 * t) - 1.0; });
    const ComparisonReport same = compare(mk, mk);
    CHECK(same.max_dev == 0.0);
    CHECK(same.rmse == 0.0);

    Series offset = mk;
    for (double& y : offset.y) y += 0.02;
    const ComparisonReport off = compare(mk, offset);
    CHECK(off.max_dev == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(off.rmse == doctest::Approx(0.02).epsilon(1e-12));

    const Series sine = sampled(0.013, 4001, [](double t) { return std::sin(2.0 * t); });
    Series sine2 = sampled(0.011, 4501, [](double t) { return std::sin(2.0 * t + 0.4); });
    const ComparisonReport ab = compare(sine, sine2);
    const ComparisonReport ba = compare(sine2, sine);
    CHECK(ab.max_dev == doctest::Approx(ba.max_dev).epsilon(0.02));
    CHECK(ab.rmse == doctest::Approx(ba.rmse).epsilon(0.02));

    Series disjoint{{100.0, 101.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(compare(mk, disjoint), std::invalid_argument);
}

TEST_CASE("resampling is linear interpolation with clamped ends") {
    const Series line = sampled(1.0, 11, [](double t) { return 3.0 * t; });
    CHECK(interp_linear(line, 2.5) == doctest::Approx(7.5));
    CHECK(interp_linear(line, -5.0) == doctest::Approx(0.0));
    CHECK(interp_linear(line, 50.0) == doctest::Approx(30.0));
    const Series r = resample(line, {0.25, 4.75, 9.5});
    CHECK(r.y[0] == doctest::Approx(0.75));
    CHECK(r.y[1] == doctest::Approx(14.25));
    CHECK(r.y[2] == doctest::Approx(28.5));
}

TEST_CASE("series validation") {
    CHECK_THROWS_AS(validate(Series{{0.0, 1.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Series{{0.0, 0.0}, {1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Series{{0.0, 1.0}, {1.0, std::nan("")}}), std::invalid_argument);
}

} // TEST_SUITE

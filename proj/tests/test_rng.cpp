#include <doctest.h>

#include <cmath>
#include <vector>

#include "spinbench/rng.hpp"

using namespace spinbench;

TEST_SUITE("rng") {

TEST_CASE("identical SeedSpec reproduces the sequence bitwise") {
    Pcg64 a({42, 7}), b({42, 7});
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    GaussianSource ga({42, 7}), gb({42, 7});
    for (int i = 0; i < 1000; ++i) CHECK(ga.next() == gb.next());
}

TEST_CASE("different stream indices decorrelate") {
    const std::size_t n = 200000;
    GaussianSource g0({9, 0}), g1({9, 1});
    double corr = 0.0, v0 = 0.0, v1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g0.next(), y = g1.next();
        corr += x * y;
        v0 += x * x;
        v1 += y * y;
    }
    const double rho = corr / std::sqrt(v0 * v1);
    CHECK(std::abs(rho) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("gaussian moments") {
    const std::size_t n = 400000;
    GaussianSource g({123, 5});
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.next();
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    const double nn = static_cast<double>(n);
    CHECK(std::abs(s1 / nn) < 4.0 / std::sqrt(nn));
    CHECK(s2 / nn == doctest::Approx(1.0).epsilon(0.02));
    CHECK(s4 / nn == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("unit uniforms stay inside (0, 1]") {
    Pcg64 p({1, 1});
    for (int i = 0; i < 100000; ++i) {
        const double u = p.next_unit();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

} // TEST_SUITE

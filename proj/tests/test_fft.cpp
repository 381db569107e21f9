#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "spinbench/fft.hpp"
#include "spinbench/rng.hpp"
#include "spinbench/simd_kernels.hpp"

using namespace spinbench;

namespace {

std::vector<std::complex<double>> random_signal(std::size_t n, std::uint64_t stream) {
    GaussianSource g({777, stream});
    std::vector<std::complex<double>> v(n);
    for (auto& z : v) z = {g.next(), g.next()};
    return v;
}

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double a = -2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(n);
            out[k] += x[j] * std::complex<double>{std::cos(a), std::sin(a)};
        }
    }
    return out;
}

double max_err(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_SUITE("fft") {

TEST_CASE("pow2 transform matches the naive DFT") {
    for (const std::size_t n : std::vector<std::size_t>{1, 2, 8, 64, 256}) {
        auto x = random_signal(n, n);
        const auto expected = naive_dft(x);
        FftPlan plan(n);
        plan.forward(x.data());
        CHECK(max_err(x, expected) < 1e-9 * static_cast<double>(n));
    }
}

TEST_CASE("forward-inverse round trip") {
    auto x = random_signal(1024, 9);
    const auto orig = x;
    FftPlan plan(1024);
    plan.forward(x.data());
    plan.inverse(x.data());
    CHECK(max_err(x, orig) < 1e-12);
}

TEST_CASE("scalar and simd butterflies agree") {
    const kern::Backend best = kern::active_backend();
    auto x = random_signal(2048, 10);
    auto y = x;
    FftPlan plan(2048);
    kern::force_backend(kern::Backend::scalar);
    plan.forward(x.data());
    kern::force_backend(best);
    plan.forward(y.data());
    CHECK(max_err(x, y) < 1e-10);
}

TEST_CASE("arbitrary-length Dft (Bluestein) matches the naive DFT") {
    for (const std::size_t n : std::vector<std::size_t>{3, 7, 12, 100, 243, 1000}) {
        auto x = random_signal(n, 100 + n);
        const auto expected = naive_dft(x);
        Dft dft(n);
        auto fwd = x;
        dft.forward(fwd.data());
        CHECK(max_err(fwd, expected) < 1e-8 * static_cast<double>(n));

        dft.inverse(fwd.data());
        CHECK(max_err(fwd, x) < 1e-10);
    }
}

TEST_CASE("unit impulse transforms to a flat spectrum") {
    std::vector<std::complex<double>> x(64, {0.0, 0.0});
    x[0] = {1.0, 0.0};
    FftPlan plan(64);
    plan.forward(x.data());
    for (const auto& z : x) {
        CHECK(z.real() == doctest::Approx(1.0));
        CHECK(z.imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("hermitian spectrum of a real signal survives an even filter") {
    const std::size_t n = 256;
    GaussianSource g({4, 4});
    std::vector<std::complex<double>> x(n);
    for (auto& z : x) z = {g.next(), 0.0};
    FftPlan plan(n);
    plan.forward(x.data());
    for (std::size_t k = 0; k < n; ++k) x[k] *= 1.0 / (1.0 + static_cast<double>(std::min(k, n - k)));
    plan.inverse(x.data());
    double max_im = 0.0;
    for (const auto& z : x) max_im = std::max(max_im, std::abs(z.imag()));
    CHECK(max_im < 1e-12);
}

} // TEST_SUITE

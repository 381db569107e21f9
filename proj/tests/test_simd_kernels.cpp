#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spinbench/rng.hpp"
#include "spinbench/simd_kernels.hpp"

using namespace spinbench;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t stream) {
    GaussianSource g({12345, stream});
    std::vector<double> v(n);
    for (double& x : v) x = g.next();
    return v;
}

} // namespace

TEST_SUITE("simd_kernels") {

TEST_CASE("active backend is available and nameable") {
    const kern::Backend b = kern::active_backend();
    CHECK(kern::backend_available(b));
    CHECK(kern::backend_name(b) != nullptr);
}

TEST_CASE("dot and cdot match the scalar reference within fp tolerance") {
    const kern::Backend best = kern::active_backend();
    for (const std::size_t n : std::vector<std::size_t>{0, 1, 3, 4, 7, 64, 1000, 4097}) {
        const auto a = random_vec(n, 1), b = random_vec(n, 2);
        const auto cr = random_vec(n, 3), ci = random_vec(n, 4);

        kern::force_backend(kern::Backend::scalar);
        const double d_s = kern::dot(a.data(), b.data(), n);
        const std::complex<double> c_s = kern::cdot_split(a.data(), ci.data(), cr.data(), b.data(), n);

        kern::force_backend(best);
        const double d_v = kern::dot(a.data(), b.data(), n);
        const std::complex<double> c_v = kern::cdot_split(a.data(), ci.data(), cr.data(), b.data(), n);

        const double scale = std::max(1.0, std::abs(d_s));
        CHECK(std::abs(d_v - d_s) / scale < 1e-12);
        CHECK(std::abs(c_v.real() - c_s.real()) < 1e-10 * std::max(1.0, std::abs(c_s.real())));
        CHECK(std::abs(c_v.imag() - c_s.imag()) < 1e-10 * std::max(1.0, std::abs(c_s.imag())));
    }
}

TEST_CASE("element-wise kernels are bit-identical across backends") {
    const kern::Backend best = kern::active_backend();
    for (const std::size_t n : std::vector<std::size_t>{1, 5, 64, 333}) {
        const auto x0 = random_vec(n, 5), y = random_vec(n, 6);
        const auto acc0 = random_vec(n, 7);
        std::vector<std::complex<double>> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = {y[i], x0[i]};

        auto x_s = x0, add_s = acc0, sq_s = acc0, abs_s = acc0;
        kern::force_backend(kern::Backend::scalar);
        kern::mul_inplace(x_s.data(), y.data(), n);
        kern::add_inplace(add_s.data(), x0.data(), n);
        kern::add_sq_inplace(sq_s.data(), x0.data(), n);
        kern::abs2_add(abs_s.data(), z.data(), n);

        auto x_v = x0, add_v = acc0, sq_v = acc0, abs_v = acc0;
        kern::force_backend(best);
        kern::mul_inplace(x_v.data(), y.data(), n);
        kern::add_inplace(add_v.data(), x0.data(), n);
        kern::add_sq_inplace(sq_v.data(), x0.data(), n);
        kern::abs2_add(abs_v.data(), z.data(), n);

        CHECK(x_s == x_v);
        CHECK(add_s == add_v);
        CHECK(sq_s == sq_v);
        CHECK(abs_s == abs_v);
    }
}

TEST_CASE("kernel semantics on known inputs") {
    kern::force_backend(kern::active_backend());
    const std::vector<double> a{1.0, 2.0, 3.0}, b{4.0, -5.0, 6.0};
    CHECK(kern::dot(a.data(), b.data(), 3) == doctest::Approx(12.0));

    // (1+2i)(3+4i) = -5 + 10i
    const double ar = 1, ai = 2, br = 3, bi = 4;
    const auto c = kern::cdot_split(&ar, &ai, &br, &bi, 1);
    CHECK(c.real() == doctest::Approx(-5.0));
    CHECK(c.imag() == doctest::Approx(10.0));

    std::vector<double> acc{0.0};
    const std::complex<double> z{3.0, 4.0};
    kern::abs2_add(acc.data(), &z, 1);
    CHECK(acc[0] == doctest::Approx(25.0));
}

} // TEST_SUITE

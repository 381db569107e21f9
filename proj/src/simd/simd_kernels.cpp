// Scalar reference kernels and the backend dispatch table.
#include "spinbench/simd_kernels.hpp"

namespace spinbench::kern {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    // Four independent accumulators: cuts the sequential-add error bound and
    // matches the lane structure the SIMD variants are tested against.
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

std::complex<double> cdot_split(const double* ar, const double* ai,
                                const double* br, const double* bi, std::size_t n) {
    double re0 = 0.0, re1 = 0.0, im0 = 0.0, im1 = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        re0 += ar[i] * br[i] - ai[i] * bi[i];
        im0 += ar[i] * bi[i] + ai[i] * br[i];
        re1 += ar[i + 1] * br[i + 1] - ai[i + 1] * bi[i + 1];
        im1 += ar[i + 1] * bi[i + 1] + ai[i + 1] * br[i + 1];
    }
    for (; i < n; ++i) {
        re0 += ar[i] * br[i] - ai[i] * bi[i];
        im0 += ar[i] * bi[i] + ai[i] * br[i];
    }
    return {re0 + re1, im0 + im1};
}

void mul_inplace(double* x, const double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= y[i];
}

void add_inplace(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void add_sq_inplace(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i] * x[i];
}

void abs2_add(double* acc, const std::complex<double>* x, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = d[2 * i], im = d[2 * i + 1];
        acc[i] += re * re + im * im;
    }
}

} // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
bool supported();
double dot(const double*, const double*, std::size_t);
std::complex<double> cdot_split(const double*, const double*, const double*, const double*, std::size_t);
void mul_inplace(double*, const double*, std::size_t);
void add_inplace(double*, const double*, std::size_t);
void add_sq_inplace(double*, const double*, std::size_t);
void abs2_add(double*, const std::complex<double>*, std::size_t);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(const double*, const double*, std::size_t);
std::complex<double> cdot_split(const double*, const double*, const double*, const double*, std::size_t);
void mul_inplace(double*, const double*, std::size_t);
void add_inplace(double*, const double*, std::size_t);
void add_sq_inplace(double*, const double*, std::size_t);
void abs2_add(double*, const std::complex<double>*, std::size_t);
} // namespace neon
#endif

namespace {

struct DispatchTable {
    Backend backend;
    double (*dot)(const double*, const double*, std::size_t);
    std::complex<double> (*cdot_split)(const double*, const double*, const double*, const double*, std::size_t);
    void (*mul_inplace)(double*, const double*, std::size_t);
    void (*add_inplace)(double*, const double*, std::size_t);
    void (*add_sq_inplace)(double*, const double*, std::size_t);
    void (*abs2_add)(double*, const std::complex<double>*, std::size_t);
};

constexpr DispatchTable kScalarTable = {
    Backend::scalar,    scalar::dot,        scalar::cdot_split, scalar::mul_inplace,
    scalar::add_inplace, scalar::add_sq_inplace, scalar::abs2_add,
};

DispatchTable make_table(Backend b) {
#if defined(__x86_64__)
    if (b == Backend::avx2 && avx2::supported()) {
        return {Backend::avx2,       avx2::dot,        avx2::cdot_split, avx2::mul_inplace,
                avx2::add_inplace,   avx2::add_sq_inplace, avx2::abs2_add};
    }
#endif
#if defined(__aarch64__)
    if (b == Backend::neon) {
        return {Backend::neon,       neon::dot,        neon::cdot_split, neon::mul_inplace,
                neon::add_inplace,   neon::add_sq_inplace, neon::abs2_add};
    }
#endif
    (void)b;
    return kScalarTable;
}

Backend best_backend() {
#if defined(__x86_64__)
    if (avx2::supported()) return Backend::avx2;
#elif defined(__aarch64__)
    return Backend::neon;
#endif
    return Backend::scalar;
}

DispatchTable g_table = make_table(best_backend());

} // namespace

Backend active_backend() { return g_table.backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

bool backend_available(Backend b) { return make_table(b).backend == b; }

void force_backend(Backend b) { g_table = make_table(b); }

double dot(const double* a, const double* b, std::size_t n) { return g_table.dot(a, b, n); }

std::complex<double> cdot_split(const double* ar, const double* ai,
                                const double* br, const double* bi, std::size_t n) {
    return g_table.cdot_split(ar, ai, br, bi, n);
}

void mul_inplace(double* x, const double* y, std::size_t n) { g_table.mul_inplace(x, y, n); }
void add_inplace(double* acc, const double* x, std::size_t n) { g_table.add_inplace(acc, x, n); }
void add_sq_inplace(double* acc, const double* x, std::size_t n) { g_table.add_sq_inplace(acc, x, n); }
void abs2_add(double* acc, const std::complex<double>* x, std::size_t n) { g_table.abs2_add(acc, x, n); }

} // namespace spinbench::kern

// model.hpp — bath coupling model, power spectra, memory kernels, rates
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace spinbench {

// Peaked spectral coupling density: c_w^2 = (2G/pi) w^2 / ((w0^2-w^2)^2 + w^2 G^2).
// Units: hbar = gamma_gyro = k_B = 1 throughout.
struct LorentzianCoupling {
    double omega0{1.0}; // resonance angular frequency, > 0
    double gamma{1.0};  // spectral width, > 0
    double alpha{0.0};  // coupling strength along x, >= 0

    static LorentzianCoupling checked(double omega0, double gamma, double alpha);
};

void validate(const LorentzianCoupling& c); // throws std::invalid_argument

enum class SpectrumForm {
    quantum_zero_point,    // pi c^2/(2w) coth(w/2T); coth -> 1 at T=0
    classical_linear,      // pi T / w^2, DC bin clamped to 0
    quantum_no_zero_point, // pi c^2/(2w) (coth(w/2T) - 1); identically 0 at T=0
};

struct SpectrumKind {
    SpectrumForm form{SpectrumForm::quantum_zero_point};
    double temperature{0.0}; // >= 0
};

enum class KernelBranch { underdamped, critical, overdamped };

struct KernelForm {
    KernelBranch branch;
    double omega_eff; // sqrt(|w0^2 - G^2/4|)
};

KernelForm kernel_form(const LorentzianCoupling& c);

double coupling_density_sq(const LorentzianCoupling& c, double omega);

// Evaluated through |omega| (even extension), finite everywhere, >= 0.
double power_spectrum(const SpectrumKind& kind, const LorentzianCoupling& c, double omega);

// Green's-function memory kernel: 0 for tau <= 0, exp(-G tau/2) sin(W tau)/W
// continued analytically across the critical point G = 2 w0.
double memory_kernel_closed(const LorentzianCoupling& c, double tau);

struct QuadratureSpec {
    double omega_max{0.0};
    std::size_t n_points{0}; // trapezoid intervals

    // Uniform-grid rules sized so the Lorentzian width is resolved and the
    // aliased kernel images land below 1e-4 of the envelope at tau_max.
    static QuadratureSpec recommended(const LorentzianCoupling& c, double tau_min, double tau_max);
};

struct QuadratureResult {
    double value{0.0};
    double error_estimate{0.0}; // discretization (Richardson) + tail bound
};

struct QuadratureResultC {
    std::complex<double> value{0.0, 0.0};
    double error_estimate{0.0};
};

// Independent oracle for memory_kernel_closed: trapezoid of
// int_0^wmax (c^2/w) sin(w tau) dw. Throws if omega_max < 10 max(w0, G).
QuadratureResult memory_kernel_quadrature(const LorentzianCoupling& c, double tau,
                                          double omega_max, std::size_t n_points);

// Rotating-frame amplitude kernel: (alpha/8) int_0^wmax (c^2/w) e^{i(w0-w)tau} dw.
QuadratureResultC ww_kernel(const LorentzianCoupling& c, double tau,
                            double omega_max, std::size_t n_points);

enum class WwTableMode { automatic, direct, fft };

// Kernel tabulated on tau_k = k dt, k = 0..n. The FFT path evaluates the same
// trapezoid sum via one zero-padded transform and is the only tractable route
// for long-horizon solves; both paths are equivalence-tested.
std::vector<std::complex<double>> ww_kernel_table(const LorentzianCoupling& c, double dt,
                                                  std::size_t n,
                                                  WwTableMode mode = WwTableMode::automatic);

struct RegimeReport {
    double lambda{0.0};   // amplitude decay rate alpha/(2 G w0)
    double mu0{0.0};      // T=0 Markovianity parameter tau_phi / tau_K
    double muT{0.0};      // high-T Markovianity parameter mu0 / coth(w0/2T)
    double tauK{0.0};     // memory decay time 2/G
    double tauPhi{0.0};   // amplitude decay time 2/lambda
    double tauPsi{0.0};   // high-T decay time 2/((2 nbar + 1) lambda)
    double nbar{0.0};     // Bose occupation at w0
    bool no_coupling{false}; // alpha == 0: mu values are infinite
};

RegimeReport regime_report(const LorentzianCoupling& c, double temperature);

namespace detail {
// sin(sqrt(s) t)/sqrt(s) and cos(sqrt(s) t), analytic in s across the
// critical point (sinh/cosh branch for s < 0).
double sinc_branch(double s, double t);
double cos_branch(double s, double t);
} // namespace detail

} // namespace spinbench

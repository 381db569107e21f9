// ww_ref.hpp — quantum reference curves
//
// The excitation amplitude obeys phi'(t) = -int_0^t K(t-t') phi(t') dt' with
// the rotating-frame kernel from the model module; <S_z> = 2|phi|^2 - 1. The
// strictly Markovian limit and the high-temperature analytic decay complete
// the reference set.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "spinbench/model.hpp"
#include "spinbench/noise.hpp"

namespace spinbench {

enum class VolterraStepper { euler, trapezoid };

struct VolterraOptions {
    VolterraStepper stepper{VolterraStepper::euler};
    WwTableMode table_mode{WwTableMode::automatic};
};

struct VolterraSolution {
    TimeGrid grid;
    std::vector<std::complex<double>> phi;
    std::vector<double> sz;
    double max_abs_phi{0.0};
    bool amplitude_exceeded{false}; // |phi| passed 1 + 1e-3: reduce dt
};

VolterraSolution solve_volterra(const LorentzianCoupling& c, const TimeGrid& grid,
                                const VolterraOptions& opts = {});

double sz_from_amplitude(std::complex<double> phi);

// 2 exp(-lambda t) - 1 (the mu0 -> infinity limit).
double markovian_decay(double lambda, double t);

// Bose occupation 1/(exp(w/T)-1); 0 at T = 0.
double mean_occupation(double omega, double temperature);

struct HighTParams {
    double nbar{0.0};
    double lambda{0.0};
};

// (2(nbar+1)/(2nbar+1)) exp(-(2nbar+1) lambda t) - 1/(2nbar+1).
double high_t_decay(const HighTParams& p, double t);

} // namespace spinbench

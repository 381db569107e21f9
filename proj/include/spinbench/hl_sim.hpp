// hl_sim.hpp — classical Heisenberg-Langevin integration and ensembles
//
// Equation of motion: dS/dt = S x [ B_ext + b(t) + m(t) e_x ], with
// m(t) = alpha * int_0^t k(t-t') S_x(t') dt' and b(t) the synthesized colored
// noise. Two memory evaluations are provided: the O(N) auxiliary oscillator
// u'' + G u' + w0^2 u = S_x (whose Green's function is exactly the memory
// kernel), advanced by an exact propagator for piecewise-linear forcing, and
// the O(N^2) direct trapezoid convolution kept as the oracle path.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinbench/model.hpp"
#include "spinbench/noise.hpp"
#include "spinbench/rng.hpp"
#include "spinbench/vec3.hpp"

namespace spinbench {

enum class MemoryMethod { auxiliary_oscillator, direct_convolution };
enum class Integrator { rotation, heun_renormalized };

struct HLConfig {
    LorentzianCoupling coupling;
    SpectrumKind spectrum;
    Vec3 b_ext{0.0, 0.0, 0.0};
    Vec3 s0{0.0, 0.0, 1.0};
    TimeGrid grid;
    MemoryMethod memory_method{MemoryMethod::auxiliary_oscillator};
    Integrator integrator{Integrator::rotation};
};

// Paper-comparison setup: B_ext = (0,0,-w0), S(0) = (0,0,+1).
HLConfig paper_hl_config(const LorentzianCoupling& c, const SpectrumKind& kind, const TimeGrid& grid);

struct MemoryState {
    double u{0.0};
    double v{0.0};
};

// x(h) = Phi x(0) + w0 * s(0) + w1 * (s(h) - s(0)), exact for forcing linear
// within the step.
struct AuxPropagator {
    double phi00, phi01, phi10, phi11;
    double w0u, w0v;
    double w1u, w1v;

    static AuxPropagator make(const LorentzianCoupling& c, double h);
};

MemoryState memory_aux_step(const MemoryState& mem, double sx_begin, double sx_end,
                            const AuxPropagator& prop);
// Constant forcing over the step.
MemoryState memory_aux_step(const MemoryState& mem, double sx, const LorentzianCoupling& c, double dt);

// Oracle: alpha * trapezoid of k(t_k - t') S_x(t') over the sampled prefix.
double memory_direct(const std::vector<double>& sx_history, const LorentzianCoupling& c,
                     double alpha, double dt, std::size_t k);

Vec3 effective_field(double memory_field_x, const Vec3& noise, const Vec3& b_ext);

// One norm-exact rotation step: ds/dt = s x field integrated as a rotation by
// |field| dt about -field.
Vec3 spin_step(const Vec3& s, const Vec3& field, double dt);

struct Trajectory {
    TimeGrid grid;
    std::vector<Vec3> s;
    SeedSpec seed;
};

struct EnsembleResult {
    TimeGrid grid;
    std::vector<double> mean_sz;
    std::vector<double> stderr_sz;
    std::size_t n_traj{0};
    std::string config_digest;
};

Trajectory run_trajectory(const HLConfig& cfg, SeedSpec seed);
// Reuses a prebuilt synthesizer (one per ensemble config).
Trajectory run_trajectory(const HLConfig& cfg, const NoiseSynth& synth, SeedSpec seed);

// Deterministic reduction: trajectories are accumulated in fixed-size index
// blocks merged in block order, so the result is bit-identical for any
// n_threads. n_threads = 0 picks hardware concurrency.
EnsembleResult run_ensemble(const HLConfig& cfg, std::size_t n_traj, std::uint64_t master_seed,
                            unsigned n_threads = 0);

std::string hl_config_digest(const HLConfig& cfg, std::size_t n_traj, std::uint64_t master_seed);

} // namespace spinbench

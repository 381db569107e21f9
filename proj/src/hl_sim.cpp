#include "spinbench/hl_sim.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spinbench/digest.hpp"
#include "spinbench/simd_kernels.hpp"

namespace spinbench {

HLConfig paper_hl_config(const LorentzianCoupling& c, const SpectrumKind& kind, const TimeGrid& grid) {
    HLConfig cfg;
    cfg.coupling = c;
    cfg.spectrum = kind;
    cfg.b_ext = {0.0, 0.0, -c.omega0};
    cfg.s0 = {0.0, 0.0, 1.0};
    cfg.grid = grid;
    return cfg;
}

AuxPropagator AuxPropagator::make(const LorentzianCoupling& c, double h) {
    const double mu = 0.5 * c.gamma;
    const double w2 = c.omega0 * c.omega0;
    const double s = w2 - mu * mu;
    const double E = std::exp(-mu * h);
    const double C = detail::cos_branch(s, h);
    const double S = detail::sinc_branch(s, h);

    AuxPropagator p{};
    p.phi00 = E * (C + mu * S);
    p.phi01 = E * S;
    p.phi10 = -E * w2 * S;
    p.phi11 = E * (C - mu * S);

    // A e2 with A = M^-1 (Phi - I), M = [[0,1],[-w0^2,-G]].
    const double a1 = (-c.gamma * p.phi01 - (p.phi11 - 1.0)) / w2;
    const double a2 = p.phi01;
    // M^-1 Phi e2 and M^-1 A e2 for the linear-ramp weight.
    const double q1 = (-c.gamma * p.phi01 - p.phi11) / w2;
    const double q2 = p.phi01;
    const double r1 = (-c.gamma * a1 - a2) / w2;
    const double r2 = a1;

    p.w0u = a1;
    p.w0v = a2;
    p.w1u = a1 - q1 + r1 / h;
    p.w1v = a2 - q2 + r2 / h;
    return p;
}

MemoryState memory_aux_step(const MemoryState& mem, double sx_begin, double sx_end,
                            const AuxPropagator& p) {
    const double ramp = sx_end - sx_begin;
    return {p.phi00 * mem.u + p.phi01 * mem.v + p.w0u * sx_begin + p.w1u * ramp,
            p.phi10 * mem.u + p.phi11 * mem.v + p.w0v * sx_begin + p.w1v * ramp};
}

MemoryState memory_aux_step(const MemoryState& mem, double sx, const LorentzianCoupling& c, double dt) {
    return memory_aux_step(mem, sx, sx, AuxPropagator::make(c, dt));
}

double memory_direct(const std::vector<double>& sx_history, const LorentzianCoupling& c,
                     double alpha, double dt, std::size_t k) {
    if (k >= sx_history.size()) throw std::invalid_argument("memory_direct: prefix too short");
    if (k == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
        const double w = (j == 0 || j == k) ? 0.5 : 1.0;
        sum += w * memory_kernel_closed(c, dt * static_cast<double>(k - j)) * sx_history[j];
    }
    return alpha * dt * sum;
}

Vec3 effective_field(double memory_field_x, const Vec3& noise, const Vec3& b_ext) {
    return {b_ext.x + noise.x + memory_field_x, b_ext.y + noise.y, b_ext.z + noise.z};
}

Vec3 spin_step(const Vec3& s, const Vec3& field, double dt) {
    const double f2 = dot(field, field);
    if (f2 == 0.0) return s;
    const double fmag = std::sqrt(f2);
    const double theta = fmag * dt;
    // Rotation vector is -field: ds/dt = s x field = (-field) x s. Written as
    // s + sin(axb) + (1-cos)(ax(axb)) so that s parallel to the axis is a
    // bit-exact fixed point.
    const double inv = -1.0 / fmag;
    const Vec3 axis{field.x * inv, field.y * inv, field.z * inv};
    const double sh = std::sin(0.5 * theta);
    const double one_minus_cos = 2.0 * sh * sh;
    const double sin_theta = std::sin(theta);
    const Vec3 c1 = cross(axis, s);
    const Vec3 c2 = cross(axis, c1);
    return {s.x + sin_theta * c1.x + one_minus_cos * c2.x,
            s.y + sin_theta * c1.y + one_minus_cos * c2.y,
            s.z + sin_theta * c1.z + one_minus_cos * c2.z};
}

namespace {

struct SharedTables {
    AuxPropagator prop_full{};
    AuxPropagator prop_half{};
    double alpha{0.0};
    double alpha_dt{0.0};
    std::vector<double> ktab;      // k(m dt), direct mode
    std::vector<double> ktab_half; // k((m+1/2) dt), direct mode
};

SharedTables build_tables(const HLConfig& cfg) {
    SharedTables t;
    t.prop_full = AuxPropagator::make(cfg.coupling, cfg.grid.dt);
    t.prop_half = AuxPropagator::make(cfg.coupling, 0.5 * cfg.grid.dt);
    t.alpha = cfg.coupling.alpha;
    t.alpha_dt = cfg.coupling.alpha * cfg.grid.dt;
    if (cfg.memory_method == MemoryMethod::direct_convolution) {
        const std::size_t n = cfg.grid.n;
        t.ktab.resize(n);
        t.ktab_half.resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            t.ktab[m] = memory_kernel_closed(cfg.coupling, cfg.grid.dt * static_cast<double>(m));
            t.ktab_half[m] =
                memory_kernel_closed(cfg.coupling, cfg.grid.dt * (static_cast<double>(m) + 0.5));
        }
    }
    return t;
}

struct Workspace {
    std::vector<double> sx_rev; // direct mode: sx_rev[n-1-j] = S_x(t_j)
};

// Integrates one trajectory; sz_out must hold grid.n values. full_out, when
// set, receives the whole path.
void integrate(const HLConfig& cfg, const SharedTables& tab, const NoiseTrace& trace,
               Workspace& ws, double* sz_out, std::vector<Vec3>* full_out) {
    const std::size_t n = cfg.grid.n;
    const double dt = cfg.grid.dt;
    const bool direct = cfg.memory_method == MemoryMethod::direct_convolution;
    const std::size_t rev_base = n - 1;

    if (direct) {
        ws.sx_rev.assign(n, 0.0);
        ws.sx_rev[rev_base] = cfg.s0.x;
    }

    Vec3 s = cfg.s0;
    MemoryState mem{};
    sz_out[0] = s.z;
    if (full_out) (*full_out)[0] = s;

    // Memory field alpha * int_0^t k(t-t') Sx dt' at the nodes and midpoints;
    // trapezoid endpoint weights folded in (k(0) = 0 kills the newest node).
    const auto mem_at_node = [&](std::size_t k) -> double {
        const double raw = kern::dot(tab.ktab.data(), ws.sx_rev.data() + (rev_base - k), k + 1);
        return tab.alpha_dt * (raw - 0.5 * tab.ktab[k] * ws.sx_rev[rev_base]);
    };
    const auto mem_at_mid = [&](std::size_t k, double sx_k) -> double {
        const double raw = kern::dot(tab.ktab_half.data(), ws.sx_rev.data() + (rev_base - k), k + 1);
        return tab.alpha_dt *
               (raw - 0.5 * tab.ktab_half[k] * ws.sx_rev[rev_base] - 0.25 * tab.ktab_half[0] * sx_k);
    };

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Vec3 b_k{trace.bx[k], 0.0, 0.0};
        const Vec3 b_k1{trace.bx[k + 1], 0.0, 0.0};

        Vec3 s_new;
        if (cfg.integrator == Integrator::rotation) {
            const double m_k = direct ? mem_at_node(k) : tab.alpha * mem.u;
            const Vec3 field_k = effective_field(m_k, b_k, cfg.b_ext);
            const Vec3 s_half = spin_step(s, field_k, 0.5 * dt);

            double m_mid;
            if (direct) {
                m_mid = mem_at_mid(k, s.x);
            } else {
                const MemoryState half = memory_aux_step(mem, s.x, s_half.x, tab.prop_half);
                m_mid = tab.alpha * half.u;
            }
            const Vec3 b_mid{0.5 * (trace.bx[k] + trace.bx[k + 1]), 0.0, 0.0};
            const Vec3 field_mid = effective_field(m_mid, b_mid, cfg.b_ext);
            s_new = spin_step(s, field_mid, dt);
        } else {
            const double m_k = direct ? mem_at_node(k) : tab.alpha * mem.u;
            const Vec3 field_k = effective_field(m_k, b_k, cfg.b_ext);
            const Vec3 f0 = cross(s, field_k);
            const Vec3 s_pred = s + dt * f0;

            double m_k1;
            if (direct) {
                ws.sx_rev[rev_base - (k + 1)] = s_pred.x; // weight k(0)=0; placeholder
                m_k1 = mem_at_node(k + 1);
            } else {
                const MemoryState pred = memory_aux_step(mem, s.x, s_pred.x, tab.prop_full);
                m_k1 = tab.alpha * pred.u;
            }
            const Vec3 field_1 = effective_field(m_k1, b_k1, cfg.b_ext);
            const Vec3 f1 = cross(s_pred, field_1);
            s_new = s + (0.5 * dt) * (f0 + f1);
            const double inv_norm = 1.0 / norm(s_new);
            s_new = inv_norm * s_new;
        }

        if (!direct) {
            mem = memory_aux_step(mem, s.x, s_new.x, tab.prop_full);
        } else {
            ws.sx_rev[rev_base - (k + 1)] = s_new.x;
        }

        const double drift = std::abs(dot(s_new, s_new) - 1.0);
        if (drift > 2e-6) { // |s|-1 beyond 1e-6
            throw std::runtime_error("run_trajectory: spin norm drift exceeded 1e-6");
        }

        s = s_new;
        sz_out[k + 1] = s.z;
        if (full_out) (*full_out)[k + 1] = s;
    }
}

} // namespace

namespace {

void validate_hl(const HLConfig& cfg) {
    validate(cfg.grid);
    validate(cfg.coupling);
    if (std::abs(dot(cfg.s0, cfg.s0) - 1.0) > 2e-9) {
        throw std::invalid_argument("HLConfig: s0 must be a unit vector");
    }
    if (!std::isfinite(cfg.b_ext.x) || !std::isfinite(cfg.b_ext.y) || !std::isfinite(cfg.b_ext.z)) {
        throw std::invalid_argument("HLConfig: b_ext must be finite");
    }
}

} // namespace

Trajectory run_trajectory(const HLConfig& cfg, const NoiseSynth& synth, SeedSpec seed) {
    validate_hl(cfg);
    const SharedTables tab = build_tables(cfg);
    Workspace ws;
    const NoiseTrace trace = synth.generate(seed);

    Trajectory traj;
    traj.grid = cfg.grid;
    traj.seed = seed;
    traj.s.resize(cfg.grid.n);
    std::vector<double> sz(cfg.grid.n);
    integrate(cfg, tab, trace, ws, sz.data(), &traj.s);
    return traj;
}

Trajectory run_trajectory(const HLConfig& cfg, SeedSpec seed) {
    return run_trajectory(cfg, NoiseSynth(cfg.grid, cfg.spectrum, cfg.coupling), seed);
}

std::string hl_config_digest(const HLConfig& cfg, std::size_t n_traj, std::uint64_t master_seed) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "omega0=%.17g;gamma=%.17g;alpha=%.17g;form=%d;T=%.17g;"
                  "bext=%.17g,%.17g,%.17g;s0=%.17g,%.17g,%.17g;dt=%.17g;n=%zu;"
                  "memory=%d;integrator=%d;n_traj=%zu;master_seed=%llu",
                  cfg.coupling.omega0, cfg.coupling.gamma, cfg.coupling.alpha,
                  static_cast<int>(cfg.spectrum.form), cfg.spectrum.temperature, cfg.b_ext.x,
                  cfg.b_ext.y, cfg.b_ext.z, cfg.s0.x, cfg.s0.y, cfg.s0.z, cfg.grid.dt, cfg.grid.n,
                  static_cast<int>(cfg.memory_method), static_cast<int>(cfg.integrator), n_traj,
                  static_cast<unsigned long long>(master_seed));
    return fnv1a64_hex(buf);
}

EnsembleResult run_ensemble(const HLConfig& cfg, std::size_t n_traj, std::uint64_t master_seed,
                            unsigned n_threads) {
    validate_hl(cfg);
    if (n_traj < 1) throw std::invalid_argument("run_ensemble: n_traj must be >= 1");
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());

    const std::size_t n = cfg.grid.n;
    const NoiseSynth synth(cfg.grid, cfg.spectrum, cfg.coupling);
    const SharedTables tab = build_tables(cfg);

    // Fixed-size index blocks merged strictly in block order: the reduction
    // tree is a function of n_traj alone, never of the thread count.
    constexpr std::size_t kBlock = 64;
    const std::size_t n_blocks = (n_traj + kBlock - 1) / kBlock;

    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    std::atomic<std::size_t> next_claim{0};
    std::mutex merge_mu;
    std::condition_variable merge_cv;
    std::size_t next_merge = 0;
    std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> parked;
    const std::size_t park_window = 2 * static_cast<std::size_t>(n_threads) + 2;
    std::exception_ptr first_error;
    std::atomic<bool> abort{false};

    auto worker = [&]() {
        Workspace ws;
        std::vector<double> sz(n);
        std::vector<double> local_sum(n), local_sumsq(n);
        try {
            while (!abort.load(std::memory_order_relaxed)) {
                const std::size_t block = next_claim.fetch_add(1);
                if (block >= n_blocks) break;
                const std::size_t begin = block * kBlock;
                const std::size_t end = std::min(n_traj, begin + kBlock);
                local_sum.assign(n, 0.0);
                local_sumsq.assign(n, 0.0);
                for (std::size_t i = begin; i < end; ++i) {
                    const NoiseTrace trace = synth.generate({master_seed, i});
                    integrate(cfg, tab, trace, ws, sz.data(), nullptr);
                    kern::add_inplace(local_sum.data(), sz.data(), n);
                    kern::add_sq_inplace(local_sumsq.data(), sz.data(), n);
                }
                std::unique_lock<std::mutex> lock(merge_mu);
                merge_cv.wait(lock, [&] {
                    return block <= next_merge + park_window || abort.load(std::memory_order_relaxed);
                });
                if (abort.load(std::memory_order_relaxed)) break;
                parked.emplace(block, std::make_pair(local_sum, local_sumsq));
                while (!parked.empty() && parked.begin()->first == next_merge) {
                    auto node = parked.extract(parked.begin());
                    kern::add_inplace(sum.data(), node.mapped().first.data(), n);
                    kern::add_inplace(sumsq.data(), node.mapped().second.data(), n);
                    ++next_merge;
                }
                merge_cv.notify_all();
            }
        } catch (...) {
            std::unique_lock<std::mutex> lock(merge_mu);
            if (!first_error) first_error = std::current_exception();
            abort.store(true);
            merge_cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_blocks));
    pool.reserve(used);
    for (unsigned i = 0; i < used; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    EnsembleResult out;
    out.grid = cfg.grid;
    out.n_traj = n_traj;
    out.config_digest = hl_config_digest(cfg, n_traj, master_seed);
    out.mean_sz.resize(n);
    out.stderr_sz.resize(n);
    const double nt = static_cast<double>(n_traj);
    for (std::size_t k = 0; k < n; ++k) {
        const double mean = sum[k] / nt;
        out.mean_sz[k] = mean;
        if (n_traj > 1) {
            const double var = std::max(0.0, (sumsq[k] - nt * mean * mean) / (nt - 1.0));
            out.stderr_sz[k] = std::sqrt(var / nt);
        } else {
            out.stderr_sz[k] = 0.0;
        }
    }
    return out;
}

} // namespace spinbench

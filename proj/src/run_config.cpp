#include "spinbench/run_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spinbench {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw std::invalid_argument(os.str());
}

double parse_double(const std::string& origin, int line, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& origin, int line, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': expected a nonnegative integer, got '" + v + "'");
    }
}

const std::map<std::string, Experiment> kExperiments = {
    {"noise-check", Experiment::noise_check}, {"kernel-check", Experiment::kernel_check},
    {"hl-run", Experiment::hl_run},           {"ww-run", Experiment::ww_run},
    {"high-t", Experiment::high_t},           {"compare", Experiment::compare_run},
    {"paper-suite", Experiment::paper_suite},
};

const std::map<std::string, SpectrumForm> kSpectra = {
    {"quantum-zero-point", SpectrumForm::quantum_zero_point},
    {"classical-linear", SpectrumForm::classical_linear},
    {"quantum-no-zero-point", SpectrumForm::quantum_no_zero_point},
};

} // namespace

const char* experiment_name(Experiment e) {
    for (const auto& [name, val] : kExperiments) {
        if (val == e) return name.c_str();
    }
    return "?";
}

std::optional<Experiment> experiment_from_name(const std::string& name) {
    const auto it = kExperiments.find(name);
    if (it == kExperiments.end()) return std::nullopt;
    return it->second;
}

TimeGrid RunConfig::grid() const {
    return {dt, static_cast<std::size_t>(std::llround(t_max / dt)) + 1};
}

LorentzianCoupling RunConfig::coupling() const {
    return LorentzianCoupling::checked(omega0, gamma, alpha);
}

SpectrumKind RunConfig::spectrum_kind() const { return {spectrum, temperature}; }

HLConfig RunConfig::hl_config() const {
    HLConfig cfg;
    cfg.coupling = coupling();
    cfg.spectrum = spectrum_kind();
    cfg.b_ext = b_ext;
    cfg.s0 = s0;
    cfg.grid = grid();
    cfg.memory_method = memory_method;
    cfg.integrator = integrator;
    return cfg;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("experiment", experiment_name(cfg.experiment));
    kv.emplace_back("omega0", fmt_double(cfg.omega0));
    kv.emplace_back("gamma", fmt_double(cfg.gamma));
    kv.emplace_back("alpha", fmt_double(cfg.alpha));
    kv.emplace_back("temperature", fmt_double(cfg.temperature));
    for (const auto& [name, val] : kSpectra) {
        if (val == cfg.spectrum) kv.emplace_back("spectrum", name);
    }
    kv.emplace_back("b_ext_x", fmt_double(cfg.b_ext.x));
    kv.emplace_back("b_ext_y", fmt_double(cfg.b_ext.y));
    kv.emplace_back("b_ext_z", fmt_double(cfg.b_ext.z));
    kv.emplace_back("s0_x", fmt_double(cfg.s0.x));
    kv.emplace_back("s0_y", fmt_double(cfg.s0.y));
    kv.emplace_back("s0_z", fmt_double(cfg.s0.z));
    kv.emplace_back("dt", fmt_double(cfg.dt));
    kv.emplace_back("t_max", fmt_double(cfg.t_max));
    kv.emplace_back("n_traj", std::to_string(cfg.n_traj));
    kv.emplace_back("master_seed", std::to_string(cfg.master_seed));
    kv.emplace_back("memory_method", cfg.memory_method == MemoryMethod::auxiliary_oscillator
                                         ? "auxiliary-oscillator"
                                         : "direct-convolution");
    kv.emplace_back("integrator",
                    cfg.integrator == Integrator::rotation ? "rotation" : "heun-renormalized");
    kv.emplace_back("stepper", cfg.stepper == VolterraStepper::euler ? "euler" : "trapezoid");
    kv.emplace_back("table_mode", cfg.table_mode == WwTableMode::automatic
                                      ? "auto"
                                      : (cfg.table_mode == WwTableMode::direct ? "direct" : "fft"));
    kv.emplace_back("quad_omega_max", fmt_double(cfg.quad_omega_max));
    kv.emplace_back("quad_n_points", std::to_string(cfg.quad_n_points));
    kv.emplace_back("dump_trajectories", std::to_string(cfg.dump_trajectories));
    kv.emplace_back("suite_scale", cfg.suite_scale);
    kv.emplace_back("out_dir", cfg.out_dir);
    return kv;
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : config_entries(*this)) os << k << " = " << v << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::set<std::string> seen;
    bool have_omega0 = false, have_bz = false, have_dt = false, have_seed = false;

    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, line_no, "empty key");
        if (val.empty()) fail(origin, line_no, "key '" + key + "': empty value");
        if (!seen.insert(key).second) fail(origin, line_no, "duplicate key '" + key + "'");

        if (key == "experiment") {
            const auto it = kExperiments.find(val);
            if (it == kExperiments.end()) fail(origin, line_no, "unknown experiment '" + val + "'");
            cfg.experiment = it->second;
        } else if (key == "omega0") {
            cfg.omega0 = parse_double(origin, line_no, key, val);
            have_omega0 = true;
        } else if (key == "gamma") {
            cfg.gamma = parse_double(origin, line_no, key, val);
        } else if (key == "alpha") {
            cfg.alpha = parse_double(origin, line_no, key, val);
        } else if (key == "temperature") {
            cfg.temperature = parse_double(origin, line_no, key, val);
        } else if (key == "spectrum") {
            const auto it = kSpectra.find(val);
            if (it == kSpectra.end()) fail(origin, line_no, "unknown spectrum '" + val + "'");
            cfg.spectrum = it->second;
        } else if (key == "b_ext_x") {
            cfg.b_ext.x = parse_double(origin, line_no, key, val);
        } else if (key == "b_ext_y") {
            cfg.b_ext.y = parse_double(origin, line_no, key, val);
        } else if (key == "b_ext_z") {
            cfg.b_ext.z = parse_double(origin, line_no, key, val);
            have_bz = true;
        } else if (key == "s0_x") {
            cfg.s0.x = parse_double(origin, line_no, key, val);
        } else if (key == "s0_y") {
            cfg.s0.y = parse_double(origin, line_no, key, val);
        } else if (key == "s0_z") {
            cfg.s0.z = parse_double(origin, line_no, key, val);
        } else if (key == "dt") {
            cfg.dt = parse_double(origin, line_no, key, val);
            have_dt = true;
        } else if (key == "t_max") {
            cfg.t_max = parse_double(origin, line_no, key, val);
        } else if (key == "n_traj") {
            cfg.n_traj = parse_u64(origin, line_no, key, val);
        } else if (key == "master_seed") {
            cfg.master_seed = parse_u64(origin, line_no, key, val);
            have_seed = true;
        } else if (key == "memory_method") {
            if (val == "auxiliary-oscillator") {
                cfg.memory_method = MemoryMethod::auxiliary_oscillator;
            } else if (val == "direct-convolution") {
                cfg.memory_method = MemoryMethod::direct_convolution;
            } else {
                fail(origin, line_no, "unknown memory_method '" + val + "'");
            }
        } else if (key == "integrator") {
            if (val == "rotation") {
                cfg.integrator = Integrator::rotation;
            } else if (val == "heun-renormalized") {
                cfg.integrator = Integrator::heun_renormalized;
            } else {
                fail(origin, line_no, "unknown integrator '" + val + "'");
            }
        } else if (key == "stepper") {
            if (val == "euler") {
                cfg.stepper = VolterraStepper::euler;
            } else if (val == "trapezoid") {
                cfg.stepper = VolterraStepper::trapezoid;
            } else {
                fail(origin, line_no, "unknown stepper '" + val + "'");
            }
        } else if (key == "table_mode") {
            if (val == "auto") {
                cfg.table_mode = WwTableMode::automatic;
            } else if (val == "direct") {
                cfg.table_mode = WwTableMode::direct;
            } else if (val == "fft") {
                cfg.table_mode = WwTableMode::fft;
            } else {
                fail(origin, line_no, "unknown table_mode '" + val + "'");
            }
        } else if (key == "quad_omega_max") {
            cfg.quad_omega_max = parse_double(origin, line_no, key, val);
        } else if (key == "quad_n_points") {
            cfg.quad_n_points = parse_u64(origin, line_no, key, val);
        } else if (key == "dump_trajectories") {
            cfg.dump_trajectories = parse_u64(origin, line_no, key, val);
        } else if (key == "suite_scale") {
            if (val != "full" && val != "smoke") fail(origin, line_no, "suite_scale must be full or smoke");
            cfg.suite_scale = val;
        } else if (key == "out_dir") {
            cfg.out_dir = val;
        } else {
            fail(origin, line_no, "unknown key '" + key + "'");
        }
    }

    // required keys and recorded defaults
    if (!have_seed) {
        throw std::invalid_argument(origin +
                                    ": master_seed is required (explicit seeds keep runs reproducible)");
    }
    if (!have_omega0) throw std::invalid_argument(origin + ": omega0 is required");
    if (!seen.count("gamma")) throw std::invalid_argument(origin + ": gamma is required");
    if (!seen.count("alpha")) throw std::invalid_argument(origin + ": alpha is required");

    if (!have_bz) {
        cfg.b_ext = {cfg.b_ext.x, cfg.b_ext.y, -cfg.omega0};
        cfg.defaults_applied.emplace_back("b_ext_z", fmt_double(cfg.b_ext.z));
    }
    if (!have_dt) {
        cfg.dt = std::min({0.01, 0.05 / cfg.omega0, 0.05 / cfg.gamma});
        cfg.defaults_applied.emplace_back("dt", fmt_double(cfg.dt));
    }
    for (const auto& [k, v] : config_entries(cfg)) {
        if (!seen.count(k) && k != "b_ext_z" && k != "dt") {
            cfg.defaults_applied.emplace_back(k, v);
        }
    }

    // validation
    if (!(cfg.omega0 > 0.0)) throw std::invalid_argument(origin + ": omega0 must be > 0");
    if (!(cfg.gamma > 0.0)) throw std::invalid_argument(origin + ": gamma must be > 0");
    if (!(cfg.alpha >= 0.0)) throw std::invalid_argument(origin + ": alpha must be >= 0");
    if (!(cfg.temperature >= 0.0)) throw std::invalid_argument(origin + ": temperature must be >= 0");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument(origin + ": dt must be > 0");
    if (!(cfg.t_max > cfg.dt)) throw std::invalid_argument(origin + ": t_max must exceed dt");
    if (cfg.n_traj < 1) throw std::invalid_argument(origin + ": n_traj must be >= 1");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_config: cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str(), path);
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_config: cannot write '" + path + "'");
    out << cfg.to_text();
}

} // namespace spinbench

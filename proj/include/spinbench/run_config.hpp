// run_config.hpp — experiment description files (flat `key = value` text)
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinbench/hl_sim.hpp"
#include "spinbench/model.hpp"
#include "spinbench/ww_ref.hpp"

namespace spinbench {

enum class Experiment {
    noise_check,
    kernel_check,
    hl_run,
    ww_run,
    high_t,
    compare_run,
    paper_suite,
};

const char* experiment_name(Experiment e);
// nullopt for unknown names
std::optional<Experiment> experiment_from_name(const std::string& name);

struct RunConfig {
    Experiment experiment{Experiment::hl_run};

    // physical parameters
    double omega0{5.0};
    double gamma{1.0};
    double alpha{0.0};
    double temperature{0.0};
    SpectrumForm spectrum{SpectrumForm::quantum_zero_point};
    Vec3 b_ext{0.0, 0.0, -5.0}; // default (0,0,-omega0)
    Vec3 s0{0.0, 0.0, 1.0};

    // numerical parameters
    double dt{0.0};   // default: min(0.01, 0.05/omega0, 0.05/gamma)
    double t_max{60.0};
    std::size_t n_traj{5000};
    std::uint64_t master_seed{0}; // required; no default
    MemoryMethod memory_method{MemoryMethod::auxiliary_oscillator};
    Integrator integrator{Integrator::rotation};
    VolterraStepper stepper{VolterraStepper::euler};
    WwTableMode table_mode{WwTableMode::automatic};
    double quad_omega_max{0.0};     // 0 = rule-derived
    std::size_t quad_n_points{0};   // 0 = rule-derived
    std::size_t dump_trajectories{0};
    std::string suite_scale{"full"}; // paper-suite: full | smoke

    std::string out_dir{"out"};

    // every key the loader filled from a default, with its effective value
    std::vector<std::pair<std::string, std::string>> defaults_applied;

    TimeGrid grid() const;
    LorentzianCoupling coupling() const;
    SpectrumKind spectrum_kind() const;
    HLConfig hl_config() const;

    // canonical `key = value` text (lossless round trip through load_config)
    std::string to_text() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");
void save_config(const RunConfig& cfg, const std::string& path);

// effective values of every key, in canonical order (for metadata sidecars)
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

} // namespace spinbench

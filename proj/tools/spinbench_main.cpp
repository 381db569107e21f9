// spinbench — classical Heisenberg-Langevin spin simulator and benchmark CLI
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "spinbench/experiments.hpp"
#include "spinbench/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spinbench: classical Heisenberg-Langevin spin dynamics vs quantum references"};
    app.set_version_flag("--version", spinbench::kVersion);

    std::string config_path;
    std::string out_dir;
    std::string experiment;
    unsigned threads = 0;
    app.add_option("--config", config_path, "run configuration file (key = value lines)")
        ->required();
    app.add_option("--out", out_dir, "output directory (overrides config out_dir)");
    app.add_option("--experiment", experiment,
                   "experiment name (overrides config): noise-check | kernel-check | hl-run | "
                   "ww-run | high-t | compare | paper-suite");
    app.add_option("--threads", threads, "worker threads (speed only; never changes output)");

    CLI11_PARSE(app, argc, argv);

    try {
        spinbench::RunConfig cfg = spinbench::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!experiment.empty()) {
            const auto exp = spinbench::experiment_from_name(experiment);
            if (!exp) {
                std::fprintf(stderr, "error: unknown experiment '%s'\n", experiment.c_str());
                return 1;
            }
            cfg.experiment = *exp;
        }
        return spinbench::run_experiment(cfg, threads);
    } catch (const spinbench::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "spinbench/experiments.hpp"
#include "spinbench/run_config.hpp"

using namespace spinbench;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "spinbench_exp" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

RunConfig small_hl_config() {
    RunConfig cfg = parse_config(
        "experiment = hl-run\n"
        "omega0 = 5\ngamma = 7.5\nalpha = 7.5\n"
        "temperature = 0\nspectrum = quantum-zero-point\n"
        "dt = 0.005\nt_max = 10\nn_traj = 120\nmaster_seed = 20260808\n"
        "dump_trajectories = 2\n");
    return cfg;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("reruns with one config produce byte-identical artifacts") {
    RunConfig cfg = small_hl_config();
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    cfg.out_dir = a.string();
    CHECK(run_experiment(cfg, 2) == 0);
    cfg.out_dir = b.string();
    CHECK(run_experiment(cfg, 1) == 0); // different thread count on purpose

    for (const char* name : {"ensemble.csv", "ensemble.svg", "trajectory_000.csv", "trajectory_001.csv"}) {
        CHECK(slurp(a / name) == slurp(b / name));
    }
}

TEST_CASE("kernel-check experiment passes and writes its table") {
    RunConfig cfg = parse_config(
        "experiment = kernel-check\nomega0 = 5\ngamma = 7.5\nalpha = 7.5\nmaster_seed = 1\n");
    const fs::path dir = fresh_dir("kernel");
    cfg.out_dir = dir.string();
    CHECK(run_experiment(cfg, 1) == 0);
    CHECK(fs::exists(dir / "kernel_check.csv"));
    CHECK(fs::exists(dir / "kernel_check.csv.meta.json"));
}

TEST_CASE("noise-check experiment passes the band test and dumps traces") {
    RunConfig cfg = parse_config(
        "experiment = noise-check\nomega0 = 5\ngamma = 7.5\nalpha = 7.5\n"
        "temperature = 0\ndt = 0.01\nt_max = 40\nn_traj = 1000\nmaster_seed = 11\n"
        "dump_trajectories = 1\n");
    const fs::path dir = fresh_dir("noise");
    cfg.out_dir = dir.string();
    CHECK(run_experiment(cfg, 1) == 0);
    CHECK(fs::exists(dir / "noise_psd.csv"));
    const std::string trace = slurp(dir / "trace_000.csv");
    CHECK(trace.rfind("t,b_x,b_y,b_z", 0) == 0);
}

TEST_CASE("compare experiment emits curves, report, and figure") {
    RunConfig cfg = parse_config(
        "experiment = compare\nomega0 = 5\ngamma = 7.5\nalpha = 7.5\n"
        "temperature = 0\ndt = 0.005\nt_max = 20\nn_traj = 150\nmaster_seed = 3\n");
    const fs::path dir = fresh_dir("compare");
    cfg.out_dir = dir.string();
    CHECK(run_experiment(cfg, 2) == 0);
    for (const char* name : {"classical.csv", "quantum.csv", "comparison_report.txt", "comparison.svg"}) {
        CHECK(fs::exists(dir / name));
    }
    const std::string report = slurp(dir / "comparison_report.txt");
    CHECK(report.find("max_dev = ") != std::string::npos);
    CHECK(report.find("steady_classical = ") != std::string::npos);
}

TEST_CASE("high-t experiment writes the analytic reference and regime data") {
    RunConfig cfg = parse_config(
        "experiment = high-t\nomega0 = 5\ngamma = 10\nalpha = 1\ntemperature = 200\n"
        "dt = 0.005\nt_max = 15\nmaster_seed = 1\n");
    const fs::path dir = fresh_dir("hight");
    cfg.out_dir = dir.string();
    CHECK(run_experiment(cfg, 1) == 0);
    const std::string meta = slurp(dir / "high_t_reference.csv.meta.json");
    CHECK(meta.find("\"muT\"") != std::string::npos);
    CHECK(meta.find("\"nbar\"") != std::string::npos);
}

} // TEST_SUITE

// acceptance.hpp — the paper-suite runs and the release criteria
//
// Executes the experiment grid (four T=0 comparisons, three T=200
// comparisons, one frozen-dynamics check) and evaluates the seven release
// criteria against the produced curves. suite scale "smoke" shrinks only the
// high-temperature ensembles (2,500 trajectories at the widened +-0.1
// plateau band, wall-clock bounded); everything else always runs at full
// published size.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinbench/analysis.hpp"
#include "spinbench/hl_sim.hpp"
#include "spinbench/run_config.hpp"
#include "spinbench/ww_ref.hpp"

namespace spinbench {

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    std::string detail;
    double seconds{0.0};
};

struct SuiteRun {
    std::string name;
    RunConfig cfg;
    std::optional<EnsembleResult> ensemble;
    Series classical; // empty t for reference-only runs
    Series quantum;
    ComparisonReport report;
    double wall_seconds{0.0};
};

struct SuiteOptions {
    bool smoke{false};           // reduced high-T ensembles (criterion 5 clause)
    unsigned n_threads{0};       // 0 = hardware concurrency
    std::uint64_t master_seed{20260808};
    std::string out_dir;         // empty: no artifacts written
};

struct SuiteResult {
    std::vector<SuiteRun> runs;
    std::vector<CriterionResult> criteria;
    bool all_pass{false};
};

SuiteResult run_paper_suite(const SuiteOptions& opts);

// One "[PASS] ..." / "[FAIL] ..." line per criterion.
void print_criteria(const std::vector<CriterionResult>& criteria);

// Exponential rate of the peak envelope of (y - floor); used for the
// non-Markovian horizon rule.
double envelope_rate(const Series& s, double floor_value);

} // namespace spinbench

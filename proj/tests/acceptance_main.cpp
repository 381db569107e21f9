// Acceptance harness: runs the paper-suite experiment grid and prints one
// pass/fail line per release criterion. Exit code 0 when all pass, 3 otherwise.
//
// --mode smoke (default for ctest) shrinks only the high-temperature
// ensembles to the sanctioned 2,500-trajectory variant with its widened
// +-0.1 plateau band; all remaining criteria run at full published size.
// --mode full runs the 25,000-trajectory high-temperature suite as well.
#include <cstdio>
#include <cstring>
#include <exception>
#include <string>

#include "spinbench/acceptance.hpp"
#include "spinbench/simd_kernels.hpp"
#include "spinbench/version.hpp"

int main(int argc, char** argv) {
    spinbench::SuiteOptions opts;
    opts.smoke = true;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--mode" && i + 1 < argc) {
            const std::string mode = argv[++i];
            if (mode == "full") {
                opts.smoke = false;
            } else if (mode == "smoke") {
                opts.smoke = true;
            } else {
                std::fprintf(stderr, "unknown mode '%s' (smoke|full)\n", mode.c_str());
                return 1;
            }
        } else if (arg == "--out" && i + 1 < argc) {
            opts.out_dir = argv[++i];
        } else if (arg == "--threads" && i + 1 < argc) {
            opts.n_threads = static_cast<unsigned>(std::atoi(argv[++i]));
        } else if (arg == "--seed" && i + 1 < argc) {
            opts.master_seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::fprintf(stderr, "usage: %s [--mode smoke|full] [--out dir] [--threads n] [--seed s]\n",
                         argv[0]);
            return 1;
        }
    }

    std::printf("spinbench acceptance %s | mode=%s | seed=%llu | kernels=%s\n",
                spinbench::kVersion, opts.smoke ? "smoke" : "full",
                static_cast<unsigned long long>(opts.master_seed),
                spinbench::kern::backend_name(spinbench::kern::active_backend()));
    std::fflush(stdout);

    try {
        const spinbench::SuiteResult result = spinbench::run_paper_suite(opts);
        spinbench::print_criteria(result.criteria);
        std::printf("%s\n", result.all_pass ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
        return result.all_pass ? 0 : 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
        return 2;
    }
}

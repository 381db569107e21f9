// experiments.hpp — named experiments behind the CLI
#pragma once

#include <stdexcept>
#include <string>

#include "spinbench/run_config.hpp"

namespace spinbench {

// A computation that ran but failed its tolerance or stability contract
// (distinct from config validation errors).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Executes cfg.experiment, writing artifacts under cfg.out_dir. Returns the
// process exit status: 0 success, 3 acceptance failure (paper-suite only).
// Validation problems throw std::invalid_argument (exit 1), numerical
// failures throw NumericalError (exit 2).
int run_experiment(const RunConfig& cfg, unsigned n_threads);

} // namespace spinbench

// output.hpp — CSV data files and JSON metadata sidecars
#pragma once

#include <string>
#include <vector>

#include "spinbench/analysis.hpp"
#include "spinbench/hl_sim.hpp"
#include "spinbench/run_config.hpp"
#include "spinbench/ww_ref.hpp"

namespace spinbench {

struct CsvColumn {
    std::string name;
    const std::vector<double>* values;
};

// Header row + full round-trip precision (%.17g) decimals.
void write_csv(const std::string& path, const std::vector<CsvColumn>& columns);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

CsvTable read_csv(const std::string& path);

void write_ensemble_csv(const std::string& path, const EnsembleResult& result);
void write_curve_csv(const std::string& path, const Series& curve,
                     const std::string& y_name = "Sz");

// Sidecar <data>.meta.json: every effective config value, defaults applied,
// seeds, trajectory count, tool version, wall clock.
void write_metadata(const std::string& data_path, const RunConfig& cfg,
                    const std::vector<std::pair<std::string, std::string>>& extra,
                    double wall_seconds, bool partial = false);

void write_comparison_report(const std::string& path, const ComparisonReport& rep);

Series ensemble_series(const EnsembleResult& r);
Series volterra_series(const VolterraSolution& s);

} // namespace spinbench

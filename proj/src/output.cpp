#include "spinbench/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spinbench/version.hpp"

namespace spinbench {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns) {
    if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
    const std::size_t rows = columns.front().values->size();
    for (const auto& c : columns) {
        if (c.values->size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot write '" + path + "'");
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c].name;
    }
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << fmt17((*columns[c].values)[r]);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file '" + path + "'");
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);
    table.columns.resize(table.header.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= table.columns.size()) throw std::runtime_error("read_csv: ragged row");
            table.columns[c].push_back(std::stod(cell));
            ++c;
        }
        if (c != table.columns.size()) throw std::runtime_error("read_csv: ragged row");
    }
    return table;
}

void write_ensemble_csv(const std::string& path, const EnsembleResult& result) {
    std::vector<double> t(result.grid.n);
    for (std::size_t k = 0; k < result.grid.n; ++k) t[k] = result.grid.t(k);
    write_csv(path, {{"t", &t}, {"mean_Sz", &result.mean_sz}, {"stderr_Sz", &result.stderr_sz}});
}

void write_curve_csv(const std::string& path, const Series& curve, const std::string& y_name) {
    write_csv(path, {{"t", &curve.t}, {y_name, &curve.y}});
}

void write_metadata(const std::string& data_path, const RunConfig& cfg,
                    const std::vector<std::pair<std::string, std::string>>& extra,
                    double wall_seconds, bool partial) {
    nlohmann::json j;
    j["tool"] = "spinbench";
    j["version"] = kVersion;
    j["data_file"] = data_path;
    j["wall_clock_seconds"] = wall_seconds;
    j["partial"] = partial;
    nlohmann::json jc = nlohmann::json::object();
    for (const auto& [k, v] : config_entries(cfg)) jc[k] = v;
    j["config"] = jc;
    nlohmann::json jd = nlohmann::json::object();
    for (const auto& [k, v] : cfg.defaults_applied) jd[k] = v;
    j["defaults_applied"] = jd;
    for (const auto& [k, v] : extra) j[k] = v;

    const std::string path = data_path + ".meta.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_metadata: cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

void write_comparison_report(const std::string& path, const ComparisonReport& rep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_comparison_report: cannot write '" + path + "'");
    const auto emit = [&](const char* key, const std::optional<double>& v) {
        out << key << " = " << (v ? fmt17(*v) : "none") << "\n";
    };
    emit("rate_classical", rep.rate_classical);
    emit("rate_quantum", rep.rate_quantum);
    emit("steady_classical", rep.steady_classical);
    emit("steady_quantum", rep.steady_quantum);
    emit("freq_classical", rep.freq_classical);
    emit("freq_quantum", rep.freq_quantum);
    out << "max_dev = " << fmt17(rep.max_dev) << "\n";
    out << "rmse = " << fmt17(rep.rmse) << "\n";
    out << "n_common = " << rep.n_common << "\n";
}

Series ensemble_series(const EnsembleResult& r) {
    Series s;
    s.t.resize(r.grid.n);
    for (std::size_t k = 0; k < r.grid.n; ++k) s.t[k] = r.grid.t(k);
    s.y = r.mean_sz;
    return s;
}

Series volterra_series(const VolterraSolution& v) {
    Series s;
    s.t.resize(v.grid.n);
    for (std::size_t k = 0; k < v.grid.n; ++k) s.t[k] = v.grid.t(k);
    s.y = v.sz;
    return s;
}

} // namespace spinbench

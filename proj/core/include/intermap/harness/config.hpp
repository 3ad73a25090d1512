#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "intermap/alpha.hpp"
#include "intermap/circuit.hpp"

namespace intermap::harness {

/// Validated experiment description. Built from a flat key = value config
/// file plus CLI overrides; unknown keys are rejected.
struct ExperimentConfig {
    std::string experiment;  // spacing | formfactor | iterates | ipr |
                             // circuit_verify | isrm_stats
    int n_q = 8;
    int n_q_min = 0;  // inclusive range for multi-N experiments; 0 = single
    int n_q_max = 0;
    Alpha alpha = Alpha::rational(1, 3);
    Variant variant = Variant::deterministic;
    PhaseModel phase_model = PhaseModel::uniform;
    double sigma = kTwoPi;
    std::uint64_t master_seed = 1;
    int ensemble_size = 100;
    std::int64_t window = 0;  // kappa window; 0 = 3b (rational) or 9
    std::vector<std::pair<std::int64_t, std::int64_t>> windows;  // iterates
    std::int64_t column_iterate = 100000;  // U^n for column-vector series
    int n_s = 0;                           // 0 = 2 n_q
    std::vector<int> n_s_list = {4, 8, 16};
    CountingMode counting = CountingMode::paper_faithful;
    bool scattering_check = false;   // extra columns in formfactor
    std::string out_dir = "out";
    int workers = 0;  // 0 = hardware concurrency
    int dense_cap = 12;

    void validate() const;
    std::int64_t kappa_window() const;
    /// MapSpec for a given qubit count (seed field = master_seed).
    MapSpec spec_for(int n_qubits) const;
    std::vector<int> qubit_counts() const;
};

std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Build a config from file values overlaid with CLI overrides. Either map
/// may be empty. Throws ConfigError on unknown keys or bad values.
ExperimentConfig make_config(
    const std::string& experiment,
    const std::map<std::string, std::string>& file_values,
    const std::map<std::string, std::string>& overrides);

/// One line per recognized key, for --help.
std::string config_key_help();

}  // namespace intermap::harness

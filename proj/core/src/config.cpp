#include "intermap/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace intermap::harness {
namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "experiment",   "n_qubits",  "n_qubits_range", "alpha",
        "variant",      "phase_model", "sigma",        "seed",
        "ensemble",     "window",    "windows",        "column_iterate",
        "n_s",          "n_s_list",  "counting",       "scattering_check",
        "out",          "workers",   "dense_cap",
    };
    return keys;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for '" + key + "': '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for '" + key + "': '" + value + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
    if (key == "experiment") {
        cfg.experiment = value;
    } else if (key == "n_qubits") {
        cfg.n_q = static_cast<int>(parse_int(key, value));
    } else if (key == "n_qubits_range") {
        const auto dots = value.find("..");
        if (dots == std::string::npos) {
            throw ConfigError("n_qubits_range expects 'a..b', got '" + value +
                              "'");
        }
        cfg.n_q_min =
            static_cast<int>(parse_int(key, trim(value.substr(0, dots))));
        cfg.n_q_max =
            static_cast<int>(parse_int(key, trim(value.substr(dots + 2))));
    } else if (key == "alpha") {
        cfg.alpha = Alpha::parse(value);
    } else if (key == "variant") {
        const auto v = variant_from_name(value);
        if (!v) throw ConfigError("unknown variant '" + value + "'");
        cfg.variant = *v;
    } else if (key == "phase_model") {
        if (value == "uniform") {
            cfg.phase_model = PhaseModel::uniform;
        } else if (value == "gaussian") {
            cfg.phase_model = PhaseModel::gaussian;
        } else {
            throw ConfigError("unknown phase_model '" + value + "'");
        }
    } else if (key == "sigma") {
        cfg.sigma = parse_double(key, value);
    } else if (key == "seed") {
        cfg.master_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "ensemble") {
        cfg.ensemble_size = static_cast<int>(parse_int(key, value));
    } else if (key == "window") {
        cfg.window = parse_int(key, value);
    } else if (key == "windows") {
        cfg.windows.clear();
        for (const std::string& range : split(value, ',')) {
            const auto colon = range.find(':');
            if (colon == std::string::npos) {
                throw ConfigError("windows expects 'lo:hi,...', got '" +
                                  range + "'");
            }
            cfg.windows.emplace_back(
                parse_int(key, trim(range.substr(0, colon))),
                parse_int(key, trim(range.substr(colon + 1))));
        }
    } else if (key == "column_iterate") {
        cfg.column_iterate = parse_int(key, value);
    } else if (key == "n_s") {
        cfg.n_s = static_cast<int>(parse_int(key, value));
    } else if (key == "n_s_list") {
        cfg.n_s_list.clear();
        for (const std::string& item : split(value, ',')) {
            cfg.n_s_list.push_back(static_cast<int>(parse_int(key, item)));
        }
    } else if (key == "counting") {
        if (value == "paper") {
            cfg.counting = CountingMode::paper_faithful;
        } else if (value == "optimized") {
            cfg.counting = CountingMode::optimized;
        } else {
            throw ConfigError("counting must be 'paper' or 'optimized'");
        }
    } else if (key == "scattering_check") {
        cfg.scattering_check = parse_int(key, value) != 0;
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "workers") {
        cfg.workers = static_cast<int>(parse_int(key, value));
    } else if (key == "dense_cap") {
        cfg.dense_cap = static_cast<int>(parse_int(key, value));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!known_keys().count(key)) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
        kv[key] = value;
    }
    return kv;
}

ExperimentConfig make_config(
    const std::string& experiment,
    const std::map<std::string, std::string>& file_values,
    const std::map<std::string, std::string>& overrides) {
    ExperimentConfig cfg;
    if (!experiment.empty()) cfg.experiment = experiment;
    for (const auto& [key, value] : file_values) apply_key(cfg, key, value);
    for (const auto& [key, value] : overrides) apply_key(cfg, key, value);
    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    static const std::set<std::string> experiments = {
        "spacing", "formfactor", "iterates",
        "ipr",     "circuit_verify", "isrm_stats"};
    if (!experiments.count(experiment)) {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    if (n_q < 2 || n_q > 20) throw ConfigError("n_qubits out of range [2,20]");
    if (n_q_min != 0 || n_q_max != 0) {
        if (n_q_min < 2 || n_q_max > 20 || n_q_min > n_q_max) {
            throw ConfigError("bad n_qubits_range");
        }
    }
    if (ensemble_size < 1) throw ConfigError("ensemble must be >= 1");
    if (window < 0) throw ConfigError("window must be >= 0");
    for (const auto& [lo, hi] : windows) {
        if (lo < 0 || hi <= lo) throw ConfigError("bad iterate window");
    }
    if (column_iterate < 1) throw ConfigError("column_iterate must be >= 1");
    if (n_s < 0) throw ConfigError("n_s must be >= 0");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (dense_cap < 2) throw ConfigError("dense_cap must be >= 2");
}

std::int64_t ExperimentConfig::kappa_window() const {
    if (window > 0) return window;
    // Default 3b for rational alpha; the averaging span the conjecture
    // needs depends only on b. Irrational alpha gets the b = 3 default so
    // cross-alpha comparisons share a window.
    return alpha.is_rational() ? 3 * alpha.denominator() : 9;
}

MapSpec ExperimentConfig::spec_for(int n_qubits) const {
    MapSpec spec;
    spec.n_q = n_qubits;
    spec.alpha = alpha;
    spec.variant = variant;
    spec.phase_model = phase_model;
    spec.sigma = sigma;
    spec.seed = master_seed;
    return spec;
}

std::vector<int> ExperimentConfig::qubit_counts() const {
    if (n_q_min == 0 && n_q_max == 0) return {n_q};
    std::vector<int> out;
    for (int k = n_q_min; k <= n_q_max; ++k) out.push_back(k);
    return out;
}

std::string config_key_help() {
    return
        "  experiment       spacing|formfactor|iterates|ipr|circuit_verify|isrm_stats\n"
        "  n_qubits         single qubit count (N = 2^n_qubits)\n"
        "  n_qubits_range   a..b inclusive, for multi-N experiments\n"
        "  alpha            a/b, decimal, or 'golden'\n"
        "  variant          det|isrm-sym|isrm-nonsym\n"
        "  phase_model      uniform|gaussian (ISRM phases)\n"
        "  sigma            gaussian phase std dev in radians\n"
        "  seed             master seed (stream k = realization k)\n"
        "  ensemble         realizations per ensemble point\n"
        "  window           kappa averaging window (0 = 3b default)\n"
        "  windows          iterate windows 'lo:hi,lo:hi,...'\n"
        "  column_iterate   iterate count n for column-vector series\n"
        "  n_s              randomization circuit length (0 = 2 n_q)\n"
        "  n_s_list         comma list for circuit_verify ISRM counts\n"
        "  counting         paper|optimized kinetic gate accounting\n"
        "  scattering_check 0|1 extra probe-qubit columns in formfactor\n"
        "  out              output directory\n"
        "  workers          worker threads (0 = hardware)\n"
        "  dense_cap        max n_q for dense N x N construction\n";
}

}  // namespace intermap::harness

// intermap: simulation lab for quantum maps with intermediate spectral
// statistics. Subcommands run one experiment each and write CSV tables plus
// gnuplot companions; the `circuit` subcommand emits and checks gate lists.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "intermap/circuit.hpp"
#include "intermap/harness/cache.hpp"
#include "intermap/harness/config.hpp"
#include "intermap/harness/experiments.hpp"
#include "intermap/isrm.hpp"
#include "intermap/map_operator.hpp"

namespace {

using intermap::harness::ExperimentConfig;

struct CommonFlags {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

void add_common_options(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "flat key = value config file");
    const auto override_opt = [cmd, &flags](const std::string& flag,
                                            const std::string& key,
                                            const std::string& help) {
        cmd->add_option_function<std::string>(
            flag,
            [&flags, key](const std::string& value) {
                flags.overrides[key] = value;
            },
            help);
    };
    override_opt("--alpha", "alpha", "a/b, decimal, or 'golden'");
    override_opt("--n-qubits", "n_qubits", "qubit count");
    override_opt("--n-qubits-range", "n_qubits_range", "a..b inclusive");
    override_opt("--variant", "variant", "det|isrm-sym|isrm-nonsym");
    override_opt("--phase-model", "phase_model", "uniform|gaussian");
    override_opt("--sigma", "sigma", "gaussian phase std dev");
    override_opt("--ensemble", "ensemble", "realizations per point");
    override_opt("--seed", "seed", "master seed");
    override_opt("--window", "window", "kappa averaging window");
    override_opt("--windows", "windows", "iterate windows lo:hi,...");
    override_opt("--column-iterate", "column_iterate",
                 "iterate count for column vectors");
    override_opt("--n-s", "n_s", "randomization circuit length");
    override_opt("--counting", "counting", "paper|optimized");
    override_opt("--scattering-check", "scattering_check",
                 "0|1 probe-qubit columns");
    override_opt("--out", "out", "output directory");
    override_opt("--workers", "workers", "worker threads (0 = hardware)");
    override_opt("--dense-cap", "dense_cap", "max n_q for dense matrices");
}

ExperimentConfig build_config(const std::string& experiment,
                              const CommonFlags& flags) {
    std::map<std::string, std::string> file_values;
    if (!flags.config_path.empty()) {
        file_values = intermap::harness::parse_config_file(flags.config_path);
    }
    return intermap::harness::make_config(experiment, file_values,
                                          flags.overrides);
}

int run_circuit_command(const std::string& emit_kind,
                        const std::string& load_path,
                        const CommonFlags& flags, bool do_count,
                        bool do_simulate) {
    const ExperimentConfig cfg = [&flags]() {
        CommonFlags with_experiment = flags;
        return intermap::harness::make_config(
            "circuit_verify",
            with_experiment.config_path.empty()
                ? std::map<std::string, std::string>{}
                : intermap::harness::parse_config_file(
                      with_experiment.config_path),
            with_experiment.overrides);
    }();
    intermap::Circuit circuit;
    if (!emit_kind.empty()) {
        const intermap::MapSpec spec = cfg.spec_for(cfg.n_q);
        if (emit_kind == "map") {
            circuit = intermap::build_map_circuit(spec, cfg.counting);
        } else if (emit_kind == "qft") {
            circuit = intermap::build_qft(cfg.n_q);
        } else if (emit_kind == "s") {
            circuit = intermap::build_s_gate(cfg.n_q);
        } else if (emit_kind == "isrm") {
            intermap::RngStream rng(cfg.master_seed, 0);
            const int n_s = cfg.n_s > 0 ? cfg.n_s : 2 * cfg.n_q;
            circuit = intermap::build_isrm_circuit(
                spec.alpha,
                intermap::draw_random_circuit_spec(cfg.n_q, n_s, rng));
        } else {
            std::cerr << "unknown --emit kind '" << emit_kind << "'\n";
            return 2;
        }
        std::cout << intermap::emit_gatelist(circuit);
        if (!circuit.output_permutation.empty()) {
            std::cerr << "note: circuit carries a bit-reversal output "
                         "permutation (not part of the gate list)\n";
        }
    } else if (!load_path.empty()) {
        std::ifstream in(load_path);
        if (!in) {
            std::cerr << "cannot open gate list '" << load_path << "'\n";
            return 2;
        }
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        circuit = intermap::parse_gatelist(text);
    } else {
        std::cerr << "circuit: pass --emit <kind> or a gate-list file\n";
        return 2;
    }
    if (do_count) {
        const intermap::GateCounts counts = intermap::count_gates(circuit);
        std::cerr << "gates: total " << counts.total << ", one-qubit "
                  << counts.one_qubit << ", two-qubit " << counts.two_qubit
                  << (counts.paper_convention ? " (paper convention)" : "")
                  << "\n";
    }
    if (do_simulate) {
        const std::size_t n = std::size_t{1} << circuit.n_q;
        intermap::StateVector basis(n);
        basis[0] = 1.0;
        const intermap::StateVector out = intermap::simulate(circuit, basis);
        std::cerr << "simulated |0...0>; output norm "
                  << intermap::norm(out) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"intermediate quantum map simulation lab"};
    app.require_subcommand(1);

    const std::vector<std::string> experiments = {
        "spacing", "formfactor", "iterates",
        "ipr",     "circuit_verify", "isrm_stats"};
    std::map<std::string, CommonFlags> flags;
    for (const std::string& name : experiments) {
        CLI::App* cmd = app.add_subcommand(name, "run the " + name +
                                                     " experiment");
        add_common_options(cmd, flags[name]);
        cmd->footer("config keys:\n" + intermap::harness::config_key_help());
    }

    CommonFlags circuit_flags;
    std::string emit_kind;
    std::string gatelist_path;
    bool do_count = false;
    bool do_simulate = false;
    CLI::App* circuit_cmd =
        app.add_subcommand("circuit", "emit or consume gate-list files");
    add_common_options(circuit_cmd, circuit_flags);
    circuit_cmd->add_option("--emit", emit_kind, "map|qft|isrm|s");
    circuit_cmd->add_option("gatelist", gatelist_path,
                            "gate-list file to load");
    circuit_cmd->add_flag("--count", do_count, "print gate counts");
    circuit_cmd->add_flag("--simulate", do_simulate,
                          "apply to |0...0> and report the norm");

    CLI11_PARSE(app, argc, argv);

    try {
        if (circuit_cmd->parsed()) {
            return run_circuit_command(emit_kind, gatelist_path, circuit_flags,
                                       do_count, do_simulate);
        }
        for (const std::string& name : experiments) {
            if (app.get_subcommand(name)->parsed()) {
                const ExperimentConfig cfg = build_config(name, flags[name]);
                const std::string csv = intermap::harness::run_experiment(cfg);
                std::cout << csv << "\n";
                return 0;
            }
        }
    } catch (const intermap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const intermap::NumericalError& e) {
        std::cerr << "numerical check failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#pragma once

#include <string>
#include <vector>

#include "intermap/harness/config.hpp"
#include "intermap/harness/result_table.hpp"

namespace intermap::harness {

struct ExperimentResult {
    ResultTable table;
    std::vector<std::string> warnings;
};

/// Fig. 1 reproduction: pooled desymmetrized spacings of alpha and 1-alpha,
/// histogram plus KS distances against semi-Poisson / Poisson / COE.
ExperimentResult run_spacing(const ExperimentConfig& cfg);

/// Ensemble spacing statistics of the ISRM classes (no S symmetry there);
/// KS against semi-Poisson / Poisson / COE / CUE.
ExperimentResult run_isrm_stats(const ExperimentConfig& cfg);

/// Trace series t_n, kappa and |kappa|^2 per N, plus the desymmetrized
/// Tr(S U^n) companion series and optional scattering-circuit columns.
ExperimentResult run_formfactor(const ExperimentConfig& cfg);

/// Figs. 2/3: intensity and Meyer-Wallach Q histograms of U^n columns per
/// iterate window, in both representations (one symmetry class for the
/// deterministic map, full matrix with ensemble averaging for ISRM).
ExperimentResult run_iterates(const ExperimentConfig& cfg);

/// Fig. 4: IPR scaling of ISRM eigenvectors and late-iterate columns over
/// an N range, with fitted exponents.
ExperimentResult run_ipr(const ExperimentConfig& cfg);

/// Gate-count formulas and circuit/matrix equivalence checks.
ExperimentResult run_circuit_verify(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment, write CSV + gnuplot companion into
/// cfg.out_dir, print warnings to stderr. Returns the CSV path.
std::string run_experiment(const ExperimentConfig& cfg);

}  // namespace intermap::harness

#pragma once

#include <cstdint>
#include <vector>

#include "intermap/alpha.hpp"
#include "intermap/circuit.hpp"
#include "intermap/complex_matrix.hpp"
#include "intermap/map_operator.hpp"
#include "intermap/rng.hpp"

namespace intermap {

/// Random kinetic phases Phi_p, p = 0..N-1. In the symmetric case the
/// pairing Phi_{N-p} = Phi_p holds exactly (p = 0 and p = N/2 are
/// self-paired and drawn free).
struct PhaseVector {
    std::vector<double> phi;
    bool symmetric = false;

    std::size_t dim() const { return phi.size(); }
};

PhaseVector sample_phases(std::size_t n, PhaseModel model, double sigma,
                          bool symmetric, RngStream& rng);

/// Phases that reproduce the deterministic kinetic factor exactly,
/// Phi_p = -2 pi p^2 / N; ISRM built from them equals the deterministic map.
PhaseVector deterministic_phases(std::size_t n);

/// ISRM unitary in momentum representation:
/// diag(e^{i Phi_p}) * (W D_alpha W^dag).
TaggedUnitary build_isrm_unitary(const PhaseVector& phases,
                                 const Alpha& alpha);
/// Same operator in position representation, (W^dag diag(e^{i Phi}) W) D_alpha.
TaggedUnitary build_isrm_unitary_position(const PhaseVector& phases,
                                          const Alpha& alpha);

/// Convenience: draw phases from RngStream(spec.seed, stream_index) and
/// build; realization k of an ensemble passes stream_index = k.
TaggedUnitary build_isrm_from_spec(const MapSpec& spec, RepresentationTag rep,
                                   std::uint64_t stream_index = 0);

/// The economical randomization circuit: n_q + n_s angles and n_s random
/// qubit pairs.
struct RandomCircuitSpec {
    int n_q = 0;
    std::vector<double> qubit_angles;              // phi_k, k = 1..n_q
    std::vector<double> pair_angles;               // phi'_k, k = 1..n_s
    std::vector<std::pair<int, int>> pairs;        // (i_k, j_k), i != j

    int n_s() const { return static_cast<int>(pairs.size()); }
    void validate() const;
};

RandomCircuitSpec draw_random_circuit_spec(int n_q, int n_s, RngStream& rng);

/// CNOT_{i_ns,j_ns}..CNOT_{i_1,j_1} * prod_k (R_{j_k}(phi'_k) CNOT_{i_k,j_k})
/// * prod_k R_k(phi_k), rightmost factor first: exactly 3 n_s + n_q gates,
/// diagonal in the computational basis.
Circuit build_random_phase_circuit(const RandomCircuitSpec& rcs);

/// Independent prediction of the randomization circuit's diagonal phase at
/// `basis_state`, relative to basis state 0, obtained by conjugating each
/// rotation's sigma_z axis through the CNOTs (every rotation contributes
/// +-phi/2 with a sign given by a bit parity of the state).
double circuit_phase_oracle(const RandomCircuitSpec& rcs,
                            std::uint64_t basis_state);

/// Absolute diagonal phase (not reduced relative to state 0).
double circuit_phase_absolute(const RandomCircuitSpec& rcs,
                              std::uint64_t basis_state);

/// Full gate-level ISRM: alpha phases, QFT, randomization block on the
/// momentum wires, inverse QFT. Simulates to
/// W^dag diag(e^{i Phi}) W D_alpha with Phi_p = circuit_phase_absolute(p).
Circuit build_isrm_circuit(const Alpha& alpha, const RandomCircuitSpec& rcs);

/// PhaseVector realized by the randomization circuit (via the oracle).
PhaseVector phases_from_circuit(const RandomCircuitSpec& rcs);

}  // namespace intermap

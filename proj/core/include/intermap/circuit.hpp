#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intermap/alpha.hpp"
#include "intermap/complex_matrix.hpp"
#include "intermap/eigen_system.hpp"
#include "intermap/rng.hpp"

namespace intermap {

/// Elementary gate. Qubit 0 is the least-significant bit of the basis-state
/// integer. Phase1 is |1> -> e^{i theta}|1>; Rz is exp(i phi sigma_z / 2);
/// CPhase is |11> -> e^{i theta}|11>; Cnot is control q0, target q1.
struct Gate {
    enum class Kind { H, Phase1, Rz, CPhase, Cnot };
    Kind kind;
    int q0 = 0;
    int q1 = 0;
    double angle = 0.0;

    static Gate h(int j) { return {Kind::H, j, 0, 0.0}; }
    static Gate phase1(int j, double theta) {
        return {Kind::Phase1, j, 0, theta};
    }
    static Gate rz(int j, double phi) { return {Kind::Rz, j, 0, phi}; }
    static Gate cphase(int i, int j, double theta);
    static Gate cnot(int i, int j);

    bool is_two_qubit() const {
        return kind == Kind::CPhase || kind == Kind::Cnot;
    }
    bool operator==(const Gate& other) const = default;
};

/// Ordered gate list; the first element acts first on the state. A builder
/// may record an output bit-permutation instead of emitting swap gates;
/// simulate() composes it after the gates. kinetic_singles counts arity-1
/// kinetic elements that the published gate accounting tallies as two-qubit.
struct Circuit {
    int n_q = 0;
    std::vector<Gate> gates;
    std::vector<std::size_t> output_permutation;  // empty = identity
    int kinetic_singles = 0;

    void validate() const;
};

enum class CountingMode { paper_faithful, optimized };

struct GateCounts {
    std::int64_t one_qubit = 0;
    std::int64_t two_qubit = 0;
    std::int64_t total = 0;
    bool paper_convention = false;  // arity-1 kinetic elements binned as 2q
};

/// QFT matching the dense kernel W after the recorded bit-reversal
/// permutation; n_q Hadamards + n_q(n_q-1)/2 controlled phases, no swaps.
Circuit build_qft(int n_q);

/// Full map circuit: alpha phases, QFT, kinetic pair phases, inverse QFT.
/// paper_faithful emits the published inventory (ordered pairs (j1,j2)
/// including j1=j2); optimized merges mirror pairs into single CPhase gates
/// with doubled angle. Both simulate to the same unitary.
Circuit build_map_circuit(const MapSpec& spec,
                          CountingMode mode = CountingMode::paper_faithful);

/// S = diag((-1)^q) as a circuit: a single phase flip on qubit 0.
Circuit build_s_gate(int n_q);

StateVector simulate(const Circuit& circuit, const StateVector& psi);

/// Dense unitary realized by the circuit (including the recorded
/// permutation), one simulation per basis column.
ComplexMatrix circuit_unitary(const Circuit& circuit);

GateCounts count_gates(const Circuit& circuit);

/// One-probe-qubit interferometric estimate of Tr U^n / N. Exact mode
/// (shots absent) averages the Hadamard-test expectation over all N basis
/// states of the maximally mixed register; shots mode draws binomial
/// readouts. U^n columns come from the eigen-decomposition.
cdouble scattering_trace(const EigenSystem& eig, std::int64_t n,
                         std::optional<std::int64_t> shots = std::nullopt,
                         RngStream* rng = nullptr);
/// Convenience overload; builds and diagonalizes the deterministic map.
cdouble scattering_trace(const MapSpec& spec, std::int64_t n,
                         std::optional<std::int64_t> shots = std::nullopt,
                         RngStream* rng = nullptr);

/// Stable text format, one gate per line:
///   H j | P1 j theta | RZ j phi | CP i j theta | CNOT i j
/// with angles printed to 17 significant digits.
std::string emit_gatelist(const Circuit& circuit);
/// Inverse of emit_gatelist; n_q is inferred as max index + 1 unless given.
Circuit parse_gatelist(const std::string& text, int n_q = 0);

}  // namespace intermap

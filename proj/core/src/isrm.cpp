#include "intermap/isrm.hpp"

#include <cmath>

namespace intermap {

PhaseVector sample_phases(std::size_t n, PhaseModel model, double sigma,
                          bool symmetric, RngStream& rng) {
    if (symmetric && n % 2 != 0) {
        throw ConfigError("sample_phases: symmetric case requires even N");
    }
    PhaseVector pv;
    pv.symmetric = symmetric;
    pv.phi.resize(n);
    const auto draw = [&]() {
        return model == PhaseModel::uniform ? rng.uniform_angle()
                                            : rng.gaussian(sigma);
    };
    if (!symmetric) {
        for (double& phi : pv.phi) phi = draw();
        return pv;
    }
    for (std::size_t p = 0; p <= n / 2; ++p) pv.phi[p] = draw();
    for (std::size_t p = n / 2 + 1; p < n; ++p) pv.phi[p] = pv.phi[n - p];
    return pv;
}

PhaseVector deterministic_phases(std::size_t n) {
    PhaseVector pv;
    pv.symmetric = true;  // p^2 = (N-p)^2 mod N
    pv.phi.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        // Same argument the kinetic root table uses, so the reduction to the
        // deterministic map is bit-exact.
        const std::size_t idx = (n - (p * p) % n) % n;
        pv.phi[p] = kTwoPi * static_cast<double>(idx) / static_cast<double>(n);
    }
    return pv;
}

namespace {

std::vector<cdouble> phase_diag(const PhaseVector& phases) {
    std::vector<cdouble> d(phases.dim());
    for (std::size_t p = 0; p < phases.dim(); ++p) {
        d[p] = std::polar(1.0, phases.phi[p]);
    }
    return d;
}

}  // namespace

TaggedUnitary build_isrm_unitary(const PhaseVector& phases,
                                 const Alpha& alpha) {
    const std::size_t n = phases.dim();
    ComplexMatrix u = alpha_kick_momentum(alpha, n);
    u.scale_rows(phase_diag(phases));
    return {std::move(u), RepresentationTag::momentum_p};
}

TaggedUnitary build_isrm_unitary_position(const PhaseVector& phases,
                                          const Alpha& alpha) {
    const std::size_t n = phases.dim();
    ComplexMatrix w = dft_matrix(n);
    ComplexMatrix phi_w = w;
    phi_w.scale_rows(phase_diag(phases));            // D_Phi W
    ComplexMatrix u = matmul(w.adjoint(), phi_w);    // W^dag D_Phi W
    u.scale_cols(alpha_phase_diagonal(alpha, n));
    return {std::move(u), RepresentationTag::position_q};
}

TaggedUnitary build_isrm_from_spec(const MapSpec& spec, RepresentationTag rep,
                                   std::uint64_t stream_index) {
    if (spec.variant == Variant::deterministic) {
        throw ConfigError("build_isrm_from_spec: spec is deterministic");
    }
    RngStream rng(spec.seed, stream_index);
    const PhaseVector phases =
        sample_phases(static_cast<std::size_t>(spec.dim()), spec.phase_model,
                      spec.sigma, spec.variant == Variant::isrm_symmetric,
                      rng);
    return rep == RepresentationTag::momentum_p
               ? build_isrm_unitary(phases, spec.alpha)
               : build_isrm_unitary_position(phases, spec.alpha);
}

void RandomCircuitSpec::validate() const {
    if (static_cast<int>(qubit_angles.size()) != n_q) {
        throw ConfigError("RandomCircuitSpec: need one angle per qubit");
    }
    if (pair_angles.size() != pairs.size()) {
        throw ConfigError("RandomCircuitSpec: pair angle/index count mismatch");
    }
    for (const auto& [i, j] : pairs) {
        if (i == j || i < 0 || j < 0 || i >= n_q || j >= n_q) {
            throw ConfigError("RandomCircuitSpec: bad qubit pair");
        }
    }
}

RandomCircuitSpec draw_random_circuit_spec(int n_q, int n_s, RngStream& rng) {
    if (n_q < 2 || n_s < 1) {
        throw ConfigError("draw_random_circuit_spec: need n_q >= 2, n_s >= 1");
    }
    RandomCircuitSpec rcs;
    rcs.n_q = n_q;
    rcs.qubit_angles.resize(n_q);
    for (double& phi : rcs.qubit_angles) phi = rng.uniform_angle();
    rcs.pair_angles.resize(n_s);
    for (double& phi : rcs.pair_angles) phi = rng.uniform_angle();
    rcs.pairs.resize(n_s);
    for (auto& [i, j] : rcs.pairs) {
        i = rng.uniform_int(n_q);
        j = rng.uniform_int(n_q - 1);
        if (j >= i) ++j;
    }
    return rcs;
}

Circuit build_random_phase_circuit(const RandomCircuitSpec& rcs) {
    rcs.validate();
    const int n_s = rcs.n_s();
    Circuit c;
    c.n_q = rcs.n_q;
    // Rightmost product factor acts first: single-qubit rotations ...
    for (int k = 0; k < rcs.n_q; ++k) {
        c.gates.push_back(Gate::rz(k, rcs.qubit_angles[k]));
    }
    // ... then (R_{j_k} CNOT_{i_k,j_k}) factors, k = n_s down to 1 ...
    for (int k = n_s - 1; k >= 0; --k) {
        c.gates.push_back(Gate::cnot(rcs.pairs[k].first, rcs.pairs[k].second));
        c.gates.push_back(Gate::rz(rcs.pairs[k].second, rcs.pair_angles[k]));
    }
    // ... then the closing CNOT string, k = 1 up to n_s.
    for (int k = 0; k < n_s; ++k) {
        c.gates.push_back(Gate::cnot(rcs.pairs[k].first, rcs.pairs[k].second));
    }
    return c;
}

double circuit_phase_absolute(const RandomCircuitSpec& rcs,
                              std::uint64_t basis_state) {
    rcs.validate();
    // Track, per qubit, the GF(2) mask of initial bits currently XORed into
    // it; a CNOT merges the control mask into the target, and each Rz
    // contributes +-phi/2 with sign (-1)^{parity(mask & state)}.
    std::vector<std::uint64_t> mask(rcs.n_q);
    for (int j = 0; j < rcs.n_q; ++j) mask[j] = std::uint64_t{1} << j;
    double phase = 0.0;
    const auto rotate = [&](int qubit, double phi) {
        const int parity =
            __builtin_parityll(mask[qubit] & basis_state);
        phase += parity ? -0.5 * phi : 0.5 * phi;
    };
    for (int k = 0; k < rcs.n_q; ++k) rotate(k, rcs.qubit_angles[k]);
    for (int k = rcs.n_s() - 1; k >= 0; --k) {
        mask[rcs.pairs[k].second] ^= mask[rcs.pairs[k].first];
        rotate(rcs.pairs[k].second, rcs.pair_angles[k]);
    }
    // The closing CNOT string only permutes basis states back; since the
    // circuit is diagonal overall it adds no phase.
    return phase;
}

double circuit_phase_oracle(const RandomCircuitSpec& rcs,
                            std::uint64_t basis_state) {
    const double rel =
        circuit_phase_absolute(rcs, basis_state) -
        circuit_phase_absolute(rcs, 0);
    return std::remainder(rel, kTwoPi);
}

Circuit build_isrm_circuit(const Alpha& alpha, const RandomCircuitSpec& rcs) {
    rcs.validate();
    const MapSpec det{rcs.n_q, alpha, Variant::deterministic,
                      PhaseModel::uniform, kTwoPi, 0};
    // Reuse the map builder for the alpha/QFT scaffolding, then splice the
    // randomization block in place of the kinetic phases.
    Circuit map_paper = build_map_circuit(det, CountingMode::paper_faithful);
    Circuit c;
    c.n_q = rcs.n_q;
    const std::size_t alpha_and_qft =
        static_cast<std::size_t>(rcs.n_q) +
        static_cast<std::size_t>(rcs.n_q) * (rcs.n_q + 1) / 2;
    c.gates.assign(map_paper.gates.begin(),
                   map_paper.gates.begin() + alpha_and_qft);
    Circuit block = build_random_phase_circuit(rcs);
    for (Gate g : block.gates) {
        g.q0 = rcs.n_q - 1 - g.q0;  // momentum wire relabeling
        if (g.is_two_qubit()) g.q1 = rcs.n_q - 1 - g.q1;
        c.gates.push_back(g);
    }
    const std::size_t kinetic =
        static_cast<std::size_t>(rcs.n_q) * rcs.n_q;
    c.gates.insert(c.gates.end(),
                   map_paper.gates.begin() + alpha_and_qft + kinetic,
                   map_paper.gates.end());
    return c;
}

PhaseVector phases_from_circuit(const RandomCircuitSpec& rcs) {
    PhaseVector pv;
    pv.symmetric = false;
    const std::size_t n = std::size_t{1} << rcs.n_q;
    pv.phi.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        pv.phi[p] = circuit_phase_absolute(rcs, p);
    }
    return pv;
}

}  // namespace intermap

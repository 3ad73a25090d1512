#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "intermap/isrm.hpp"
#include "intermap/spectral.hpp"

using namespace intermap;

TEST_CASE("symmetric phase pairing is exact") {
    RngStream rng(5, 0);
    const PhaseVector pv =
        sample_phases(8, PhaseModel::uniform, kTwoPi, true, rng);
    CHECK(pv.phi[3] == pv.phi[5]);
    CHECK(pv.phi[1] == pv.phi[7]);
    CHECK(pv.phi[2] == pv.phi[6]);
    CHECK(pv.symmetric);
    CHECK_THROWS_AS(
        sample_phases(7, PhaseModel::uniform, kTwoPi, true, rng),
        ConfigError);
}

TEST_CASE("phase sampling replays deterministically") {
    RngStream a(77, 4);
    RngStream b(77, 4);
    const PhaseVector pa =
        sample_phases(64, PhaseModel::uniform, kTwoPi, false, a);
    const PhaseVector pb =
        sample_phases(64, PhaseModel::uniform, kTwoPi, false, b);
    CHECK(pa.phi == pb.phi);
}

TEST_CASE("uniform phases average to a small resultant") {
    const std::size_t n = 1024;
    int ok = 0;
    for (int seed = 0; seed < 100; ++seed) {
        RngStream rng(123, static_cast<std::uint64_t>(seed));
        const PhaseVector pv =
            sample_phases(n, PhaseModel::uniform, kTwoPi, false, rng);
        cdouble mean{};
        for (const double phi : pv.phi) mean += std::polar(1.0, phi);
        mean /= static_cast<double>(n);
        if (std::abs(mean) < 0.1) ++ok;
    }
    CHECK(ok >= 99);
}

TEST_CASE("ensemble streams are decorrelated") {
    const std::size_t n = 1024;
    RngStream a(9, 0);
    RngStream b(9, 1);
    const PhaseVector pa =
        sample_phases(n, PhaseModel::uniform, kTwoPi, false, a);
    const PhaseVector pb =
        sample_phases(n, PhaseModel::uniform, kTwoPi, false, b);
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += pa.phi[i];
        mb += pb.phi[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (pa.phi[i] - ma) * (pb.phi[i] - mb);
        saa += (pa.phi[i] - ma) * (pa.phi[i] - ma);
        sbb += (pb.phi[i] - mb) * (pb.phi[i] - mb);
    }
    CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 0.1);
}

TEST_CASE("gaussian phase model has the requested spread") {
    RngStream rng(2024, 0);
    const PhaseVector pv =
        sample_phases(4096, PhaseModel::gaussian, 0.3, false, rng);
    double mean = 0.0;
    for (const double phi : pv.phi) mean += phi;
    mean /= 4096.0;
    double var = 0.0;
    for (const double phi : pv.phi) var += (phi - mean) * (phi - mean);
    var /= 4096.0;
    CHECK(mean == doctest::Approx(0.0).epsilon(0.05));
    CHECK(std::sqrt(var) == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("zero phases with zero kick give the identity") {
    PhaseVector pv;
    pv.phi.assign(16, 0.0);
    const TaggedUnitary u = build_isrm_unitary(pv, Alpha::real(0.0));
    CHECK(max_abs_diff(u.matrix, ComplexMatrix::identity(16)) < 1e-12);
}

TEST_CASE("deterministic phases reduce the ISRM to the map bit-for-bit") {
    MapSpec spec;
    spec.n_q = 6;
    spec.alpha = Alpha::rational(1, 3);
    const TaggedUnitary det = build_unitary(spec);
    const TaggedUnitary isrm =
        build_isrm_unitary(deterministic_phases(64), spec.alpha);
    CHECK(det.matrix == isrm.matrix);
}

TEST_CASE("isrm unitarity") {
    for (const bool symmetric : {false, true}) {
        RngStream rng(31, symmetric ? 1 : 0);
        const PhaseVector pv =
            sample_phases(256, PhaseModel::uniform, kTwoPi, symmetric, rng);
        const TaggedUnitary u = build_isrm_unitary(pv, Alpha::rational(1, 3));
        CHECK(u.matrix.unitarity_residual() < 1e-10);
        const TaggedUnitary uq =
            build_isrm_unitary_position(pv, Alpha::rational(1, 3));
        CHECK(uq.matrix.unitarity_residual() < 1e-10);
    }
}

TEST_CASE("ideal ISRM spectrum without kick is the phase set itself") {
    RngStream rng(8, 0);
    const PhaseVector pv =
        sample_phases(32, PhaseModel::uniform, kTwoPi, false, rng);
    const TaggedUnitary u = build_isrm_unitary(pv, Alpha::real(0.0));
    const std::vector<double> phases = eigenphases(u.matrix);
    std::vector<double> expected = pv.phi;
    std::sort(expected.begin(), expected.end());
    REQUIRE(phases.size() == expected.size());
    for (std::size_t k = 0; k < phases.size(); ++k) {
        CHECK(std::abs(phases[k] - expected[k]) < 1e-10);
    }
}

TEST_CASE("randomization circuit shape and diagonality") {
    RngStream rng(14, 0);
    const RandomCircuitSpec rcs = draw_random_circuit_spec(3, 5, rng);
    const Circuit block = build_random_phase_circuit(rcs);
    CHECK(block.gates.size() == 20);  // 3 n_s + n_q

    for (const int n_q : {3, 5, 6}) {
        for (int trial = 0; trial < 3; ++trial) {
            RngStream draw(100 + trial, static_cast<std::uint64_t>(n_q));
            const RandomCircuitSpec spec =
                draw_random_circuit_spec(n_q, 4 * n_q, draw);
            const ComplexMatrix m =
                circuit_unitary(build_random_phase_circuit(spec));
            double off = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    if (i != j) off = std::max(off, std::abs(m.at(i, j)));
                }
            }
            CHECK(off < 1e-12);
        }
    }
}

TEST_CASE("phase oracle matches the simulated diagonal") {
    RngStream rng(21, 0);
    const RandomCircuitSpec rcs = draw_random_circuit_spec(5, 12, rng);
    const ComplexMatrix m = circuit_unitary(build_random_phase_circuit(rcs));
    const cdouble ref = m.at(0, 0);
    for (std::size_t x = 0; x < 32; ++x) {
        const double oracle = circuit_phase_oracle(rcs, x);
        const cdouble predicted = ref * std::polar(1.0, oracle);
        CHECK(std::abs(predicted - m.at(x, x)) < 1e-10);
        const cdouble absolute =
            std::polar(1.0, circuit_phase_absolute(rcs, x));
        CHECK(std::abs(absolute - m.at(x, x)) < 1e-10);
    }
    CHECK(circuit_phase_oracle(rcs, 0) == 0.0);
}

TEST_CASE("oracle with no entangling pairs is a plain Rz sum") {
    RandomCircuitSpec rcs;
    rcs.n_q = 4;
    rcs.qubit_angles = {0.3, 0.7, 1.1, 2.9};
    for (std::uint64_t state = 0; state < 16; ++state) {
        double expected = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (state & (1ULL << j)) expected -= rcs.qubit_angles[j];
        }
        CHECK(circuit_phase_oracle(rcs, state) ==
              doctest::Approx(std::remainder(expected, kTwoPi))
                  .epsilon(1e-12));
    }
}

TEST_CASE("assembled ISRM circuit equals the ideal construction") {
    for (const int n_q : {3, 4, 5}) {
        RngStream rng(55, static_cast<std::uint64_t>(n_q));
        const RandomCircuitSpec rcs =
            draw_random_circuit_spec(n_q, 2 * n_q, rng);
        const Alpha alpha = Alpha::rational(1, 3);
        const Circuit full = build_isrm_circuit(alpha, rcs);
        const ComplexMatrix ideal =
            build_isrm_unitary_position(phases_from_circuit(rcs), alpha)
                .matrix;
        CHECK(max_abs_diff(circuit_unitary(full), ideal) < 1e-10);
    }
}

TEST_CASE("assembled ISRM circuit gate accounting") {
    RngStream rng(91, 0);
    const int n_q = 4;
    const int n_s = 8;
    const RandomCircuitSpec rcs = draw_random_circuit_spec(n_q, n_s, rng);
    const Circuit full = build_isrm_circuit(Alpha::rational(1, 3), rcs);
    const GateCounts counts = count_gates(full);
    CHECK(counts.two_qubit == n_q * n_q - n_q + 2 * n_s);  // 28
    CHECK(counts.one_qubit == 4 * n_q + n_s);              // 24
    CHECK(!counts.paper_convention);
}

TEST_CASE("random circuit spec validation") {
    RandomCircuitSpec bad;
    bad.n_q = 3;
    bad.qubit_angles = {0.1, 0.2, 0.3};
    bad.pair_angles = {0.5};
    bad.pairs = {{1, 1}};
    CHECK_THROWS_AS(build_random_phase_circuit(bad), ConfigError);
    bad.pairs = {{0, 5}};
    CHECK_THROWS_AS(build_random_phase_circuit(bad), ConfigError);
}

TEST_CASE("build_isrm_from_spec streams are independent and replayable") {
    MapSpec spec;
    spec.n_q = 5;
    spec.alpha = Alpha::rational(1, 3);
    spec.variant = Variant::isrm_nonsymmetric;
    spec.seed = 1234;
    const TaggedUnitary u0 =
        build_isrm_from_spec(spec, RepresentationTag::momentum_p, 0);
    const TaggedUnitary u0_again =
        build_isrm_from_spec(spec, RepresentationTag::momentum_p, 0);
    CHECK(u0.matrix == u0_again.matrix);
    const TaggedUnitary u1 =
        build_isrm_from_spec(spec, RepresentationTag::momentum_p, 1);
    CHECK(max_abs_diff(u0.matrix, u1.matrix) > 1e-3);
    CHECK_THROWS_AS(build_isrm_from_spec(MapSpec{},
                                         RepresentationTag::momentum_p, 0),
                    ConfigError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "intermap/circuit.hpp"
#include "intermap/map_operator.hpp"
#include "intermap/rng.hpp"
#include "intermap/spectral.hpp"

using namespace intermap;

namespace {

MapSpec det_spec(int n_q, Alpha alpha) {
    MapSpec spec;
    spec.n_q = n_q;
    spec.alpha = alpha;
    return spec;
}

Circuit random_circuit(int n_q, int gates, std::uint64_t seed) {
    RngStream rng(seed, 0);
    Circuit c;
    c.n_q = n_q;
    for (int g = 0; g < gates; ++g) {
        const int kind = rng.uniform_int(5);
        const int i = rng.uniform_int(n_q);
        int j = rng.uniform_int(n_q - 1);
        if (j >= i) ++j;
        const double angle = rng.uniform_angle();
        switch (kind) {
            case 0: c.gates.push_back(Gate::h(i)); break;
            case 1: c.gates.push_back(Gate::phase1(i, angle)); break;
            case 2: c.gates.push_back(Gate::rz(i, angle)); break;
            case 3: c.gates.push_back(Gate::cphase(i, j, angle)); break;
            default: c.gates.push_back(Gate::cnot(i, j)); break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("single qubit qft is a Hadamard") {
    const Circuit qft = build_qft(1);
    REQUIRE(qft.gates.size() == 1);
    CHECK(qft.gates[0] == Gate::h(0));
    const ComplexMatrix m = circuit_unitary(qft);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(m.at(0, 0) - r) < 1e-15);
    CHECK(std::abs(m.at(0, 1) - r) < 1e-15);
    CHECK(std::abs(m.at(1, 0) - r) < 1e-15);
    CHECK(std::abs(m.at(1, 1) + r) < 1e-15);
}

TEST_CASE("qft gate budget is n(n+1)/2") {
    CHECK(build_qft(3).gates.size() == 6);
    for (int n_q = 1; n_q <= 12; ++n_q) {
        const Circuit qft = build_qft(n_q);
        CHECK(static_cast<int>(qft.gates.size()) == n_q * (n_q + 1) / 2);
        const GateCounts counts = count_gates(qft);
        CHECK(counts.one_qubit == n_q);
        CHECK(counts.two_qubit == n_q * (n_q - 1) / 2);
    }
}

TEST_CASE("qft realizes the dense Fourier kernel") {
    for (int n_q = 1; n_q <= 6; ++n_q) {
        const Circuit qft = build_qft(n_q);
        const ComplexMatrix w = dft_matrix(std::size_t{1} << n_q);
        CHECK(max_abs_diff(circuit_unitary(qft), w) < 1e-10);
    }
}

TEST_CASE("map circuit simulates to the dense unitary") {
    for (const Alpha& alpha :
         {Alpha::rational(1, 3), Alpha::rational(2, 5), Alpha::golden()}) {
        for (const int n_q : {2, 4, 6}) {
            const MapSpec spec = det_spec(n_q, alpha);
            const Circuit circuit = build_map_circuit(spec);
            const ComplexMatrix dense = build_unitary_position(spec).matrix;
            CAPTURE(alpha.to_string());
            CAPTURE(n_q);
            CHECK(max_abs_diff_up_to_phase(circuit_unitary(circuit), dense) <
                  1e-9);
        }
    }
}

TEST_CASE("kinetic counting modes simulate identically") {
    const MapSpec spec = det_spec(5, Alpha::rational(1, 3));
    const Circuit paper = build_map_circuit(spec, CountingMode::paper_faithful);
    const Circuit opt = build_map_circuit(spec, CountingMode::optimized);
    CHECK(max_abs_diff(circuit_unitary(paper), circuit_unitary(opt)) < 1e-10);
    CHECK(count_gates(paper).paper_convention);
    CHECK(!count_gates(opt).paper_convention);
}

TEST_CASE("map circuit gate counts match the published formulas") {
    for (int n_q = 2; n_q <= 12; ++n_q) {
        const std::int64_t nq = n_q;
        const Circuit circuit =
            build_map_circuit(det_spec(n_q, Alpha::rational(1, 3)));
        const GateCounts counts = count_gates(circuit);
        CHECK(counts.total == 2 * nq * nq + 2 * nq);
        CHECK(counts.two_qubit == 2 * nq * nq - nq);
        CHECK(counts.one_qubit == 3 * nq);
    }
    const GateCounts c3 =
        count_gates(build_map_circuit(det_spec(3, Alpha::rational(1, 3))));
    CHECK(c3.total == 24);
    CHECK(c3.two_qubit == 15);
    const GateCounts c5 =
        count_gates(build_map_circuit(det_spec(5, Alpha::rational(1, 3))));
    CHECK(c5.total == 60);
    CHECK(c5.two_qubit == 45);
}

TEST_CASE("simulate basics") {
    StateVector psi(8);
    psi[3] = 1.0;
    Circuit empty;
    empty.n_q = 3;
    CHECK(max_abs_diff(simulate(empty, psi), psi) == 0.0);

    Circuit hh;
    hh.n_q = 3;
    hh.gates = {Gate::h(1), Gate::h(1)};
    CHECK(max_abs_diff(simulate(hh, psi), psi) < 1e-15);

    const Circuit noisy = random_circuit(6, 50, 7);
    StateVector state(64);
    state[0] = 1.0;
    const StateVector out = simulate(noisy, state);
    CHECK(std::abs(norm(out) - 1.0) < 1e-12);

    Circuit bad;
    bad.n_q = 2;
    bad.gates = {Gate::h(5)};
    CHECK_THROWS_AS(simulate(bad, StateVector(4)), ConfigError);
}

TEST_CASE("s gate circuit equals the diagonal symmetry operator") {
    const Circuit s2 = build_s_gate(2);
    const ComplexMatrix m = circuit_unitary(s2);
    for (std::size_t q = 0; q < 4; ++q) {
        const double expect = (q % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(m.at(q, q) - expect) < 1e-15);
    }
    const ComplexMatrix twice = matmul(m, m);
    CHECK(max_abs_diff(twice, ComplexMatrix::identity(4)) < 1e-15);

    const ComplexMatrix s8 = circuit_unitary(build_s_gate(8));
    CHECK(max_abs_diff(s8, build_symmetry_S(256).matrix) == 0.0);
}

TEST_CASE("scattering trace reads Tr U^n / N") {
    // Identity operator: every n gives 1 + 0i.
    const EigenSystem id_eig = eigensystem(ComplexMatrix::identity(16));
    CHECK(std::abs(scattering_trace(id_eig, 1) - cdouble{1.0, 0.0}) < 1e-12);

    const MapSpec spec = det_spec(6, Alpha::rational(1, 3));
    const TaggedUnitary u = build_unitary(spec);
    const EigenSystem eig = eigensystem(u.matrix);
    CHECK(std::abs(scattering_trace(eig, 0) - cdouble{1.0, 0.0}) < 1e-12);

    const TraceSeries ts = trace_series(eig, 3);
    const cdouble expected = ts.t[3] / 64.0;
    CHECK(std::abs(scattering_trace(eig, 3) - expected) < 1e-8);
}

TEST_CASE("scattering trace shot mode is a fair estimator") {
    const MapSpec spec = det_spec(4, Alpha::rational(1, 3));
    const TaggedUnitary u = build_unitary(spec);
    const EigenSystem eig = eigensystem(u.matrix);
    const cdouble exact = scattering_trace(eig, 2);
    RngStream rng(33, 0);
    const cdouble sampled = scattering_trace(eig, 2, 40000, &rng);
    CHECK(std::abs(sampled - exact) < 0.05);

    RngStream replay_a(33, 0);
    RngStream replay_b(33, 0);
    CHECK(scattering_trace(eig, 2, 500, &replay_a) ==
          scattering_trace(eig, 2, 500, &replay_b));
    CHECK_THROWS_AS(scattering_trace(eig, 2, 500, nullptr), ConfigError);
}

TEST_CASE("gatelist serialization") {
    Circuit single;
    single.n_q = 1;
    single.gates = {Gate::h(0)};
    CHECK(emit_gatelist(single) == "H 0\n");

    Circuit cp;
    cp.n_q = 4;
    cp.gates = {Gate::cphase(1, 3, -0.5)};
    CHECK(emit_gatelist(cp) == "CP 1 3 -0.5\n");

    const Circuit map4 = build_map_circuit(det_spec(4, Alpha::golden()));
    const Circuit parsed = parse_gatelist(emit_gatelist(map4), 4);
    REQUIRE(parsed.gates.size() == map4.gates.size());
    CHECK(parsed.gates == map4.gates);

    const Circuit rz = parse_gatelist("RZ 2 0.25\nCNOT 0 1\n");
    REQUIRE(rz.gates.size() == 2);
    CHECK(rz.gates[0] == Gate::rz(2, 0.25));
    CHECK(rz.gates[1] == Gate::cnot(0, 1));
    CHECK(rz.n_q == 3);
}

TEST_CASE("gatelist parse errors carry line numbers") {
    try {
        parse_gatelist("H 0\nBOGUS 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_gatelist("CP 1 1 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_gatelist("H 0 junk\n"), ConfigError);
    CHECK_THROWS_AS(parse_gatelist("H 4\n", 2), ConfigError);
}

#include <benchmark/benchmark.h>

#include "intermap/circuit.hpp"
#include "intermap/isrm.hpp"
#include "intermap/map_operator.hpp"
#include "intermap/spectral.hpp"

namespace {

using namespace intermap;

MapSpec det_spec(int n_q) {
    MapSpec spec;
    spec.n_q = n_q;
    spec.alpha = Alpha::rational(1, 3);
    return spec;
}

void BM_ApplyMapFFT(benchmark::State& state) {
    const int n_q = static_cast<int>(state.range(0));
    const MapSpec spec = det_spec(n_q);
    StateVector psi(std::size_t{1} << n_q,
                    cdouble{1.0 / std::sqrt(std::ldexp(1.0, n_q)), 0.0});
    for (auto _ : state) {
        psi = apply_map(psi, spec);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetComplexityN(std::int64_t{1} << n_q);
}
BENCHMARK(BM_ApplyMapFFT)->DenseRange(6, 12)->Complexity(benchmark::oNLogN);

void BM_ApplyMapDense(benchmark::State& state) {
    const int n_q = static_cast<int>(state.range(0));
    const MapSpec spec = det_spec(n_q);
    const TaggedUnitary u = build_unitary_position(spec);
    StateVector psi(std::size_t{1} << n_q,
                    cdouble{1.0 / std::sqrt(std::ldexp(1.0, n_q)), 0.0});
    for (auto _ : state) {
        psi = matvec(u.matrix, psi);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetComplexityN(std::int64_t{1} << n_q);
}
BENCHMARK(BM_ApplyMapDense)->DenseRange(6, 10)->Complexity(benchmark::oNSquared);

void BM_BuildUnitary(benchmark::State& state) {
    const MapSpec spec = det_spec(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const TaggedUnitary u = build_unitary(spec);
        benchmark::DoNotOptimize(u.matrix.data());
    }
}
BENCHMARK(BM_BuildUnitary)->DenseRange(4, 10);

void BM_Eigenphases(benchmark::State& state) {
    const MapSpec spec = det_spec(static_cast<int>(state.range(0)));
    const TaggedUnitary u = build_unitary(spec);
    for (auto _ : state) {
        const std::vector<double> phases = eigenphases(u.matrix);
        benchmark::DoNotOptimize(phases.data());
    }
}
BENCHMARK(BM_Eigenphases)->DenseRange(4, 9);

void BM_EigensystemVectors(benchmark::State& state) {
    const MapSpec spec = det_spec(static_cast<int>(state.range(0)));
    const TaggedUnitary u = build_unitary(spec);
    for (auto _ : state) {
        const EigenSystem eig = eigensystem(u.matrix);
        benchmark::DoNotOptimize(eig.phases.data());
    }
}
BENCHMARK(BM_EigensystemVectors)->DenseRange(4, 9);

void BM_SimulateMapCircuit(benchmark::State& state) {
    const int n_q = static_cast<int>(state.range(0));
    const Circuit circuit = build_map_circuit(det_spec(n_q));
    StateVector psi(std::size_t{1} << n_q);
    psi[0] = 1.0;
    for (auto _ : state) {
        psi = simulate(circuit, psi);
        benchmark::DoNotOptimize(psi.data());
    }
}
BENCHMARK(BM_SimulateMapCircuit)->DenseRange(4, 12);

}  // namespace

BENCHMARK_MAIN();

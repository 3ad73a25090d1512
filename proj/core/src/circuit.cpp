#include "intermap/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "intermap/map_operator.hpp"
#include "intermap/spectral.hpp"

namespace intermap {
namespace {

double frac(double x) {
    double f = std::fmod(x, 1.0);
    if (f < 0.0) f += 1.0;
    return f;
}

/// Phase angle 2*pi*alpha*2^j reduced mod 2*pi, exactly for rational alpha.
double alpha_qubit_angle(const Alpha& alpha, int j) {
    if (alpha.is_rational()) {
        const std::int64_t b = alpha.denominator();
        std::int64_t pow = 1;
        for (int k = 0; k < j; ++k) pow = (pow * 2) % b;
        const std::int64_t r = ((alpha.numerator() % b) * pow) % b;
        return kTwoPi * static_cast<double>(r) / static_cast<double>(b);
    }
    // 2^j * alpha is an exact scaling; fmod is exact on doubles.
    return kTwoPi * frac(std::ldexp(alpha.value(), j));
}

std::vector<std::size_t> bit_reversal_permutation(int n_q) {
    const std::size_t n = std::size_t{1} << n_q;
    std::vector<std::size_t> perm(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t r = 0;
        for (int b = 0; b < n_q; ++b) {
            if (x & (std::size_t{1} << b)) r |= std::size_t{1} << (n_q - 1 - b);
        }
        perm[x] = r;
    }
    return perm;
}

void append_qft_gates(Circuit& c) {
    for (int j = c.n_q - 1; j >= 0; --j) {
        c.gates.push_back(Gate::h(j));
        for (int k = j - 1; k >= 0; --k) {
            c.gates.push_back(
                Gate::cphase(k, j, kTwoPi / std::ldexp(2.0, j - k)));
        }
    }
}

void append_inverse_qft_gates(Circuit& c) {
    Circuit fwd;
    fwd.n_q = c.n_q;
    append_qft_gates(fwd);
    for (auto it = fwd.gates.rbegin(); it != fwd.gates.rend(); ++it) {
        Gate g = *it;
        g.angle = -g.angle;
        c.gates.push_back(g);
    }
}

}  // namespace

Gate Gate::cphase(int i, int j, double theta) {
    if (i == j) throw ConfigError("CPhase requires distinct qubits");
    return {Kind::CPhase, i, j, theta};
}

Gate Gate::cnot(int i, int j) {
    if (i == j) throw ConfigError("CNOT requires distinct qubits");
    return {Kind::Cnot, i, j, 0.0};
}

void Circuit::validate() const {
    for (const Gate& g : gates) {
        const bool ok0 = g.q0 >= 0 && g.q0 < n_q;
        const bool ok1 = !g.is_two_qubit() || (g.q1 >= 0 && g.q1 < n_q);
        if (!ok0 || !ok1) {
            throw ConfigError("circuit gate touches qubit out of range");
        }
    }
    if (!output_permutation.empty() &&
        output_permutation.size() != (std::size_t{1} << n_q)) {
        throw ConfigError("circuit permutation has wrong length");
    }
}

Circuit build_qft(int n_q) {
    Circuit c;
    c.n_q = n_q;
    append_qft_gates(c);
    c.output_permutation = bit_reversal_permutation(n_q);
    return c;
}

Circuit build_map_circuit(const MapSpec& spec, CountingMode mode) {
    spec.validate();
    if (spec.variant != Variant::deterministic) {
        throw ConfigError("build_map_circuit: spec is not deterministic");
    }
    const int n = spec.n_q;
    Circuit c;
    c.n_q = n;

    // Kinetic pair angle -2*pi*2^{j1+j2}/N reduced mod 2*pi; the power-of-two
    // fraction is exact, so angles that are whole turns become exactly zero.
    const auto kinetic_angle = [n](int bit_sum) {
        return -kTwoPi * std::fmod(std::ldexp(1.0, bit_sum - n), 1.0);
    };

    // Kick part, diagonal in q: one phase per qubit.
    for (int j = 0; j < n; ++j) {
        c.gates.push_back(Gate::phase1(j, alpha_qubit_angle(spec.alpha, j)));
    }
    // To momentum representation. The un-swapped QFT leaves momentum bit j
    // on wire n-1-j, so the kinetic block addresses relabeled wires and the
    // inverse QFT undoes relabeling and transform at once.
    append_qft_gates(c);
    const auto wire = [n](int momentum_bit) { return n - 1 - momentum_bit; };
    if (mode == CountingMode::paper_faithful) {
        for (int j1 = 0; j1 < n; ++j1) {
            for (int j2 = 0; j2 < n; ++j2) {
                const double theta = kinetic_angle(j1 + j2);
                if (j1 == j2) {
                    c.gates.push_back(Gate::phase1(wire(j1), theta));
                    ++c.kinetic_singles;
                } else if (j1 < j2) {
                    c.gates.push_back(
                        Gate::cphase(wire(j1), wire(j2), theta));
                } else {
                    c.gates.push_back(
                        Gate::cphase(wire(j2), wire(j1), theta));
                }
            }
        }
    } else {
        for (int j = 0; j < n; ++j) {
            c.gates.push_back(Gate::phase1(wire(j), kinetic_angle(2 * j)));
        }
        for (int j1 = 0; j1 < n; ++j1) {
            for (int j2 = j1 + 1; j2 < n; ++j2) {
                c.gates.push_back(Gate::cphase(wire(j1), wire(j2),
                                               kinetic_angle(j1 + j2 + 1)));
            }
        }
    }
    append_inverse_qft_gates(c);
    return c;
}

Circuit build_s_gate(int n_q) {
    Circuit c;
    c.n_q = n_q;
    c.gates.push_back(Gate::phase1(0, kTwoPi / 2.0));
    return c;
}

StateVector simulate(const Circuit& circuit, const StateVector& psi) {
    const std::size_t n = std::size_t{1} << circuit.n_q;
    if (psi.size() != n) {
        throw ConfigError("simulate: state length does not match circuit");
    }
    circuit.validate();
    StateVector amp = psi;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const Gate& g : circuit.gates) {
        const std::size_t m0 = std::size_t{1} << g.q0;
        switch (g.kind) {
            case Gate::Kind::H: {
                for (std::size_t x = 0; x < n; ++x) {
                    if (x & m0) continue;
                    const cdouble a = amp[x];
                    const cdouble b = amp[x | m0];
                    amp[x] = (a + b) * inv_sqrt2;
                    amp[x | m0] = (a - b) * inv_sqrt2;
                }
                break;
            }
            case Gate::Kind::Phase1: {
                const cdouble f = std::polar(1.0, g.angle);
                for (std::size_t x = 0; x < n; ++x) {
                    if (x & m0) amp[x] *= f;
                }
                break;
            }
            case Gate::Kind::Rz: {
                const cdouble f0 = std::polar(1.0, g.angle / 2.0);
                const cdouble f1 = std::conj(f0);
                for (std::size_t x = 0; x < n; ++x) {
                    amp[x] *= (x & m0) ? f1 : f0;
                }
                break;
            }
            case Gate::Kind::CPhase: {
                const std::size_t m1 = std::size_t{1} << g.q1;
                const cdouble f = std::polar(1.0, g.angle);
                const std::size_t both = m0 | m1;
                for (std::size_t x = 0; x < n; ++x) {
                    if ((x & both) == both) amp[x] *= f;
                }
                break;
            }
            case Gate::Kind::Cnot: {
                const std::size_t mt = std::size_t{1} << g.q1;
                for (std::size_t x = 0; x < n; ++x) {
                    if ((x & m0) && !(x & mt)) {
                        std::swap(amp[x], amp[x | mt]);
                    }
                }
                break;
            }
        }
    }
    if (!circuit.output_permutation.empty()) {
        StateVector out(n);
        for (std::size_t x = 0; x < n; ++x) {
            out[circuit.output_permutation[x]] = amp[x];
        }
        return out;
    }
    return amp;
}

ComplexMatrix circuit_unitary(const Circuit& circuit) {
    const std::size_t n = std::size_t{1} << circuit.n_q;
    ComplexMatrix u(n, n);
    StateVector basis(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(basis.begin(), basis.end(), cdouble{});
        basis[j] = 1.0;
        const StateVector col = simulate(circuit, basis);
        for (std::size_t i = 0; i < n; ++i) u.at(i, j) = col[i];
    }
    return u;
}

GateCounts count_gates(const Circuit& circuit) {
    GateCounts counts;
    for (const Gate& g : circuit.gates) {
        (g.is_two_qubit() ? counts.two_qubit : counts.one_qubit) += 1;
    }
    counts.one_qubit -= circuit.kinetic_singles;
    counts.two_qubit += circuit.kinetic_singles;
    counts.paper_convention = circuit.kinetic_singles > 0;
    counts.total = counts.one_qubit + counts.two_qubit;
    return counts;
}

cdouble scattering_trace(const EigenSystem& eig, std::int64_t n,
                         std::optional<std::int64_t> shots, RngStream* rng) {
    const std::size_t dim = eig.dim();
    if (n < 0) throw ConfigError("scattering_trace: n must be >= 0");
    // Hadamard-test expectations per basis state of the mixed register:
    // ancilla H, controlled-U^n as the block matrix [I, 0; 0, U^n], readout.
    std::vector<cdouble> diag(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const StateVector col = matrix_power_apply(eig, n, j);
        StateVector probe(2 * dim);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        probe[j] = inv_sqrt2;  // ancilla |0>, system |j>
        for (std::size_t x = 0; x < dim; ++x) {
            probe[dim + x] = inv_sqrt2 * col[x];  // ancilla |1>, U^n |j>
        }
        cdouble overlap{};
        for (std::size_t x = 0; x < dim; ++x) {
            overlap += std::conj(probe[x]) * probe[dim + x];
        }
        diag[j] = 2.0 * overlap;  // <sigma_x> + i <sigma_y> for this j
    }
    if (!shots.has_value()) {
        cdouble sum{};
        for (const cdouble& d : diag) sum += d;
        return sum / static_cast<double>(dim);
    }
    if (rng == nullptr) {
        throw ConfigError("scattering_trace: shots mode needs an RngStream");
    }
    const std::int64_t s = *shots;
    if (s <= 0) throw ConfigError("scattering_trace: shots must be positive");
    std::int64_t x_sum = 0;
    std::int64_t y_sum = 0;
    for (std::int64_t k = 0; k < s; ++k) {
        const auto jx = static_cast<std::size_t>(
            rng->uniform_int(static_cast<int>(dim)));
        const double px = 0.5 * (1.0 + diag[jx].real());
        x_sum += rng->uniform() < px ? 1 : -1;
        const auto jy = static_cast<std::size_t>(
            rng->uniform_int(static_cast<int>(dim)));
        const double py = 0.5 * (1.0 + diag[jy].imag());
        y_sum += rng->uniform() < py ? 1 : -1;
    }
    const double sd = static_cast<double>(s);
    return {static_cast<double>(x_sum) / sd, static_cast<double>(y_sum) / sd};
}

cdouble scattering_trace(const MapSpec& spec, std::int64_t n,
                         std::optional<std::int64_t> shots, RngStream* rng) {
    const TaggedUnitary u = build_unitary(spec);
    const EigenSystem eig = eigensystem(u.matrix, spec.canonical_encoding());
    return scattering_trace(eig, n, shots, rng);
}

std::string emit_gatelist(const Circuit& circuit) {
    std::ostringstream out;
    char buf[64];
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case Gate::Kind::H:
                out << "H " << g.q0 << "\n";
                break;
            case Gate::Kind::Phase1:
                std::snprintf(buf, sizeof buf, "%.17g", g.angle);
                out << "P1 " << g.q0 << " " << buf << "\n";
                break;
            case Gate::Kind::Rz:
                std::snprintf(buf, sizeof buf, "%.17g", g.angle);
                out << "RZ " << g.q0 << " " << buf << "\n";
                break;
            case Gate::Kind::CPhase:
                std::snprintf(buf, sizeof buf, "%.17g", g.angle);
                out << "CP " << g.q0 << " " << g.q1 << " " << buf << "\n";
                break;
            case Gate::Kind::Cnot:
                out << "CNOT " << g.q0 << " " << g.q1 << "\n";
                break;
        }
    }
    return out.str();
}

Circuit parse_gatelist(const std::string& text, int n_q) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int max_index = -1;
    const auto fail = [&line_no](const std::string& why) {
        throw ConfigError("gatelist line " + std::to_string(line_no) + ": " +
                          why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string op;
        fields >> op;
        if (op.empty()) continue;
        int i = 0;
        int j = 0;
        double angle = 0.0;
        if (op == "H") {
            if (!(fields >> i)) fail("expected 'H j'");
            c.gates.push_back(Gate::h(i));
        } else if (op == "P1") {
            if (!(fields >> i >> angle)) fail("expected 'P1 j theta'");
            c.gates.push_back(Gate::phase1(i, angle));
        } else if (op == "RZ") {
            if (!(fields >> i >> angle)) fail("expected 'RZ j phi'");
            c.gates.push_back(Gate::rz(i, angle));
        } else if (op == "CP") {
            if (!(fields >> i >> j >> angle)) fail("expected 'CP i j theta'");
            c.gates.push_back(Gate::cphase(i, j, angle));
        } else if (op == "CNOT") {
            if (!(fields >> i >> j)) fail("expected 'CNOT i j'");
            c.gates.push_back(Gate::cnot(i, j));
        } else {
            fail("unknown gate '" + op + "'");
        }
        std::string rest;
        if (fields >> rest) fail("trailing tokens");
        max_index = std::max({max_index, i, j});
    }
    c.n_q = n_q > 0 ? n_q : max_index + 1;
    if (max_index >= c.n_q) {
        throw ConfigError("gatelist touches qubit " +
                          std::to_string(max_index) + " beyond n_q");
    }
    return c;
}

}  // namespace intermap

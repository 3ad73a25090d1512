#include "intermap/map_operator.hpp"

#include <atomic>
#include <cmath>

#include "intermap/fft.hpp"

namespace intermap {
namespace {

double frac(double x) {
    double f = std::fmod(x, 1.0);
    if (f < 0.0) f += 1.0;
    return f;
}

std::atomic<int> g_dense_cap{12};

void check_dense_cap(int n_q) {
    if (n_q > dense_qubit_cap()) {
        throw ConfigError("dense construction refused: n_q = " +
                          std::to_string(n_q) + " exceeds cap " +
                          std::to_string(dense_qubit_cap()));
    }
}

/// exp(2i*pi*k/N) lookup, exact integer reduction mod N.
struct RootTable {
    explicit RootTable(std::size_t n) : n_(n), roots_(n) {
        for (std::size_t k = 0; k < n; ++k) {
            roots_[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) /
                                            static_cast<double>(n));
        }
    }
    cdouble operator()(std::int64_t k) const {
        std::int64_t r = k % static_cast<std::int64_t>(n_);
        if (r < 0) r += static_cast<std::int64_t>(n_);
        return roots_[static_cast<std::size_t>(r)];
    }
    std::size_t n_;
    std::vector<cdouble> roots_;
};

}  // namespace

std::pair<double, double> classical_step(double p, double q,
                                         const Alpha& alpha) {
    const double p_next = frac(p + alpha.value());
    const double q_next = frac(q + 2.0 * p_next);
    return {p_next, q_next};
}

int dense_qubit_cap() { return g_dense_cap.load(); }
void set_dense_qubit_cap(int n_q) { g_dense_cap.store(n_q); }

ComplexMatrix dft_matrix(std::size_t n) {
    const RootTable roots(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix w(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            w.at(p, q) = scale * roots(static_cast<std::int64_t>(p * q));
        }
    }
    return w;
}

std::vector<cdouble> kinetic_phase_diagonal(std::size_t n) {
    const RootTable roots(n);
    std::vector<cdouble> d(n);
    for (std::size_t p = 0; p < n; ++p) {
        d[p] = roots(-static_cast<std::int64_t>(p * p));
    }
    return d;
}

std::vector<cdouble> alpha_phase_diagonal(const Alpha& alpha, std::size_t n) {
    std::vector<cdouble> d(n);
    if (alpha.is_rational()) {
        const std::int64_t a = alpha.numerator();
        const std::int64_t b = alpha.denominator();
        const RootTable roots(static_cast<std::size_t>(b));
        for (std::size_t q = 0; q < n; ++q) {
            d[q] = roots((a % b) * static_cast<std::int64_t>(q % b));
        }
    } else {
        const double av = alpha.value();
        for (std::size_t q = 0; q < n; ++q) {
            d[q] = std::polar(1.0, kTwoPi * frac(av * static_cast<double>(q)));
        }
    }
    return d;
}

ComplexMatrix alpha_kick_momentum(const Alpha& alpha, std::size_t n) {
    ComplexMatrix w = dft_matrix(n);
    ComplexMatrix wdag = w.adjoint();
    wdag.scale_rows(alpha_phase_diagonal(alpha, n));  // D_alpha W^dag
    return matmul(w, wdag);
}

TaggedUnitary build_unitary(const MapSpec& spec) {
    spec.validate();
    if (spec.variant != Variant::deterministic) {
        throw ConfigError("build_unitary: spec is not deterministic");
    }
    check_dense_cap(spec.n_q);
    const auto n = static_cast<std::size_t>(spec.dim());
    ComplexMatrix u = alpha_kick_momentum(spec.alpha, n);
    u.scale_rows(kinetic_phase_diagonal(n));
    return {std::move(u), RepresentationTag::momentum_p};
}

TaggedUnitary build_unitary_position(const MapSpec& spec) {
    spec.validate();
    if (spec.variant != Variant::deterministic) {
        throw ConfigError("build_unitary_position: spec is not deterministic");
    }
    check_dense_cap(spec.n_q);
    const auto n = static_cast<std::size_t>(spec.dim());
    ComplexMatrix w = dft_matrix(n);
    ComplexMatrix kin_w = w;
    kin_w.scale_rows(kinetic_phase_diagonal(n));     // D_kin W
    ComplexMatrix u = matmul(w.adjoint(), kin_w);    // W^dag D_kin W
    u.scale_cols(alpha_phase_diagonal(spec.alpha, n));
    return {std::move(u), RepresentationTag::position_q};
}

TaggedUnitary convert_representation(const TaggedUnitary& u,
                                     RepresentationTag target) {
    if (u.rep == target) return u;
    const std::size_t n = u.matrix.rows();
    ComplexMatrix w = dft_matrix(n);
    if (target == RepresentationTag::position_q) {
        // q-rep = W^dag U W
        return {matmul(w.adjoint(), matmul(u.matrix, w)), target};
    }
    return {matmul(w, matmul(u.matrix, w.adjoint())), target};
}

cdouble closed_form_element(std::int64_t p, std::int64_t p_prime,
                            const MapSpec& spec) {
    const std::int64_t n = spec.dim();
    if (p < 0 || p >= n || p_prime < 0 || p_prime >= n) {
        throw ConfigError("closed_form_element: index out of range");
    }
    const double nd = static_cast<double>(n);
    const double alpha_n = frac(nd * spec.alpha.value());  // N*alpha mod 1
    const cdouble numerator = 1.0 - std::polar(1.0, kTwoPi * alpha_n);
    const double delta =
        static_cast<double>(p - p_prime) + nd * spec.alpha.value();
    const cdouble den = 1.0 - std::polar(1.0, kTwoPi * frac(delta / nd));
    const cdouble kinetic =
        std::polar(1.0, -kTwoPi * static_cast<double>((p * p) % n) / nd);
    if (std::abs(den) > 1e-9) {
        return kinetic * numerator / (den * nd);
    }
    // Degenerate denominator: N*alpha is (numerically) integer and the
    // element is a pure momentum shift.
    const std::int64_t shift = std::llround(nd * spec.alpha.value());
    const std::int64_t residue = (((p - p_prime + shift) % n) + n) % n;
    return residue == 0 ? kinetic : cdouble{};
}

StateVector apply_map(const StateVector& psi, const MapSpec& spec) {
    const auto n = static_cast<std::size_t>(spec.dim());
    if (psi.size() != n || (n & (n - 1)) != 0) {
        throw ConfigError("apply_map: state length must be 2^n_q");
    }
    StateVector work = psi;
    const auto d_alpha = alpha_phase_diagonal(spec.alpha, n);
    for (std::size_t q = 0; q < n; ++q) work[q] *= d_alpha[q];
    work = fourier_to_momentum(work);
    const auto d_kin = kinetic_phase_diagonal(n);
    for (std::size_t p = 0; p < n; ++p) work[p] *= d_kin[p];
    return fourier_to_position(work);
}

StateVector apply_map_inverse(const StateVector& psi, const MapSpec& spec) {
    const auto n = static_cast<std::size_t>(spec.dim());
    if (psi.size() != n || (n & (n - 1)) != 0) {
        throw ConfigError("apply_map_inverse: state length must be 2^n_q");
    }
    StateVector work = fourier_to_momentum(psi);
    const auto d_kin = kinetic_phase_diagonal(n);
    for (std::size_t p = 0; p < n; ++p) work[p] *= std::conj(d_kin[p]);
    work = fourier_to_position(work);
    const auto d_alpha = alpha_phase_diagonal(spec.alpha, n);
    for (std::size_t q = 0; q < n; ++q) work[q] *= std::conj(d_alpha[q]);
    return work;
}

TaggedUnitary build_symmetry_S(std::size_t n) {
    std::vector<cdouble> d(n);
    for (std::size_t q = 0; q < n; ++q) {
        d[q] = (q % 2 == 0) ? cdouble{1.0, 0.0} : cdouble{-1.0, 0.0};
    }
    return {ComplexMatrix::diagonal(d), RepresentationTag::position_q};
}

double symmetry_commutator_norm(const ComplexMatrix& u_position) {
    // (US - SU)_{qq'} = U_{qq'} ((-1)^{q'} - (-1)^q): vanishes on equal
    // parity, doubles the entry on mixed parity.
    double worst = 0.0;
    for (std::size_t i = 0; i < u_position.rows(); ++i) {
        for (std::size_t j = 0; j < u_position.cols(); ++j) {
            if (((i ^ j) & 1U) != 0U) {
                worst = std::max(worst, 2.0 * std::abs(u_position.at(i, j)));
            }
        }
    }
    return worst;
}

SymmetryBlocks desymmetrize(const TaggedUnitary& u, double commutator_tol,
                            double block_unitarity_tol) {
    if (u.rep != RepresentationTag::position_q) {
        throw ConfigError("desymmetrize expects a position-representation matrix");
    }
    const std::size_t n = u.matrix.rows();
    if (n % 4 != 0) {
        throw ConfigError("desymmetrize requires N = 0 (mod 4)");
    }
    const double comm = symmetry_commutator_norm(u.matrix);
    if (comm > commutator_tol) {
        throw NumericalError("desymmetrize: commutator norm " +
                             std::to_string(comm) + " exceeds tolerance");
    }
    SymmetryBlocks blocks;
    for (std::size_t q = 0; q < n; ++q) {
        (q % 2 == 0 ? blocks.even_indices : blocks.odd_indices).push_back(q);
    }
    blocks.u_even = u.matrix.restricted(blocks.even_indices);
    blocks.u_odd = u.matrix.restricted(blocks.odd_indices);
    if (block_unitarity_tol > 0.0) {
        const double re = blocks.u_even.unitarity_residual();
        const double ro = blocks.u_odd.unitarity_residual();
        if (re > block_unitarity_tol || ro > block_unitarity_tol) {
            throw NumericalError("desymmetrize: block unitarity residual " +
                                 std::to_string(std::max(re, ro)));
        }
    }
    return blocks;
}

StateVector matrix_power_apply(const EigenSystem& eig, std::int64_t n,
                               std::size_t column) {
    if (!eig.has_vectors) {
        throw ConfigError("matrix_power_apply: eigenvectors not available");
    }
    const std::size_t dim = eig.dim();
    if (column >= dim) {
        throw ConfigError("matrix_power_apply: column out of range");
    }
    // w = diag(e^{i n theta}) V^dag e_column ; result = V w
    StateVector w(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const cdouble phase =
            std::polar(1.0, static_cast<double>(n) * eig.phases[k]);
        w[k] = phase * std::conj(eig.vectors.at(column, k));
    }
    return matvec(eig.vectors, w);
}

ComplexMatrix matrix_power_dense(const EigenSystem& eig, std::int64_t n) {
    if (!eig.has_vectors) {
        throw ConfigError("matrix_power_dense: eigenvectors not available");
    }
    const std::size_t dim = eig.dim();
    ComplexMatrix scaled = eig.vectors;
    std::vector<cdouble> d(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        d[k] = std::polar(1.0, static_cast<double>(n) * eig.phases[k]);
    }
    scaled.scale_cols(d);
    return matmul(scaled, eig.vectors.adjoint());
}

}  // namespace intermap

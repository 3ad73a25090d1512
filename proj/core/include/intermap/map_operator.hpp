#pragma once

#include <cstdint>
#include <utility>

#include "intermap/alpha.hpp"
#include "intermap/complex_matrix.hpp"
#include "intermap/eigen_system.hpp"

namespace intermap {

/// Basis a dense operator is expressed in. Position (q, computational) and
/// momentum (p) are related by the Fourier kernel W with
/// <p|q> = exp(+2i*pi*p*q/N)/sqrt(N).
enum class RepresentationTag { momentum_p, position_q };

struct TaggedUnitary {
    ComplexMatrix matrix;
    RepresentationTag rep;
};

/// One step of the classical map: p' = p + alpha (mod 1), q' = q + 2p' (mod 1).
std::pair<double, double> classical_step(double p, double q,
                                         const Alpha& alpha);

/// Largest qubit count for which dense N x N construction is permitted.
/// Default 12; the harness config may raise or lower it.
int dense_qubit_cap();
void set_dense_qubit_cap(int n_q);

/// W as a dense matrix (kernel above); rarely needed outside tests and
/// representation changes.
ComplexMatrix dft_matrix(std::size_t n);

/// diag entries exp(-2i*pi*p^2/N), p = 0..N-1.
std::vector<cdouble> kinetic_phase_diagonal(std::size_t n);
/// diag entries exp(+2i*pi*alpha*q), q = 0..N-1 (exact congruence arithmetic
/// for rational alpha).
std::vector<cdouble> alpha_phase_diagonal(const Alpha& alpha, std::size_t n);

/// W * diag(alpha phases) * W^dag — the kick factor in momentum
/// representation; shared by the deterministic map and the ISRM ensemble.
ComplexMatrix alpha_kick_momentum(const Alpha& alpha, std::size_t n);

/// Dense deterministic map in momentum representation,
/// U = D_kin * (W D_alpha W^dag).
TaggedUnitary build_unitary(const MapSpec& spec);
/// Same operator in position representation, U = (W^dag D_kin W) * D_alpha.
TaggedUnitary build_unitary_position(const MapSpec& spec);

/// Representation change by dense conjugation with W.
TaggedUnitary convert_representation(const TaggedUnitary& u,
                                     RepresentationTag target);

/// Closed-form momentum matrix element: (1/N) * exp(-2i*pi*p^2/N) *
/// (1 - exp(2i*pi*N*alpha)) / (1 - exp(2i*pi*(p - p' + N*alpha)/N)), with the
/// analytic shift-operator limit when the denominator is degenerate
/// (|1 - e^{i theta}| <= 1e-9). Independent of the DFT-conjugation route.
cdouble closed_form_element(std::int64_t p, std::int64_t p_prime,
                            const MapSpec& spec);

/// One map iteration on a position-representation state in O(N log N):
/// psi -> W^dag D_kin W D_alpha psi.
StateVector apply_map(const StateVector& psi, const MapSpec& spec);
/// Inverse iteration, psi -> D_alpha^dag W^dag D_kin^dag W psi.
StateVector apply_map_inverse(const StateVector& psi, const MapSpec& spec);

/// S = diag((-1)^q) in position representation.
TaggedUnitary build_symmetry_S(std::size_t n);

/// max entry norm of U S - S U for diagonal S = diag((-1)^q); cheap, no GEMM.
double symmetry_commutator_norm(const ComplexMatrix& u_position);

/// U restricted to the S = +1 (even q) and S = -1 (odd q) subspaces.
struct SymmetryBlocks {
    ComplexMatrix u_even;
    ComplexMatrix u_odd;
    std::vector<std::size_t> even_indices;
    std::vector<std::size_t> odd_indices;
};

/// Index-partition desymmetrization in the position representation.
/// Requires N = 0 (mod 4) and a commutator norm below `commutator_tol`;
/// rejects with the measured norm otherwise. Each block is checked unitary
/// within `block_unitarity_tol` unless that tolerance is <= 0.
SymmetryBlocks desymmetrize(const TaggedUnitary& u,
                            double commutator_tol = 1e-8,
                            double block_unitarity_tol = 1e-9);

/// Column `column` of U^n via the eigen-decomposition,
/// V diag(e^{i n theta}) V^dag e_column. Needs eigenvectors.
StateVector matrix_power_apply(const EigenSystem& eig, std::int64_t n,
                               std::size_t column);

/// Dense U^n = V diag(e^{i n theta}) V^dag; two GEMMs, used when all
/// columns of an iterate are wanted at once.
ComplexMatrix matrix_power_dense(const EigenSystem& eig, std::int64_t n);

}  // namespace intermap

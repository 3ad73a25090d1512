#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "intermap/complex_matrix.hpp"
#include "intermap/eigen_system.hpp"

namespace intermap {

/// Dense eigen-decomposition of a (verified) unitary. Phases are sorted
/// ascending in [0, 2pi) with eigenvector columns permuted alongside.
/// Throws NumericalError on non-convergence, input unitarity residual
/// above `unitarity_tol`, or eigenvalues off the unit circle.
EigenSystem eigensystem(const ComplexMatrix& u, const std::string& source = "",
                        double unitarity_tol = 1e-8);

/// Eigenphases only; skips the eigenvector computation (much faster for
/// spacing statistics).
std::vector<double> eigenphases(const ComplexMatrix& u,
                                double unitarity_tol = 1e-8);

/// max_k ||U v_k - e^{i theta_k} v_k||_2 over all columns (one GEMM).
double eigenvector_residual(const ComplexMatrix& u, const EigenSystem& eig);

/// Unfolded nearest-neighbor spacings with unit mean: s_k = N (theta_{k+1}
/// - theta_k) / 2pi including the wraparound gap. Degenerate spacings
/// (< 1e-12) are kept as zeros and counted, never merged.
struct SpacingSample {
    std::vector<double> s;
    std::string metadata;
    std::size_t degenerate_count = 0;
};

SpacingSample unfold_spacings(const std::vector<double>& sorted_phases,
                              const std::string& metadata = "");

/// Semi-Poisson family P_beta(s) = A s^beta e^{-(beta+1)s} with
/// A = (beta+1)^{beta+1} / Gamma(beta+1): unit integral and unit mean.
double semi_poisson_pdf(double beta, double s);
double semi_poisson_cdf(double beta, double s);

double poisson_pdf(double s);
double poisson_cdf(double s);

/// Wigner surmise, orthogonal class: (pi/2) s exp(-pi s^2 / 4).
double wigner_coe_pdf(double s);
double wigner_coe_cdf(double s);

/// Wigner surmise, unitary class: (32/pi^2) s^2 exp(-4 s^2 / pi).
double wigner_cue_pdf(double s);
double wigner_cue_cdf(double s);

/// Two-sided Kolmogorov-Smirnov statistic between the empirical CDF of the
/// sample and a reference CDF.
double ks_distance(const std::vector<double>& sample,
                   const std::function<double(double)>& cdf);
double ks_distance(const SpacingSample& sample,
                   const std::function<double(double)>& cdf);

/// t_n = Tr U^n = sum_k e^{i n theta_k} for n = 0..n_max (t_0 = N exactly).
struct TraceSeries {
    std::vector<cdouble> t;
    std::size_t dim = 0;
};

TraceSeries trace_series(const std::vector<double>& phases,
                         std::int64_t n_max);
TraceSeries trace_series(const EigenSystem& eig, std::int64_t n_max);

/// kappa = (1/window) sum_{n=1}^{window} t_n / sqrt(N); the short-time form
/// factor is |kappa|^2.
struct KappaEstimate {
    cdouble kappa;
    double form_factor = 0.0;
};

KappaEstimate kappa_estimate(const TraceSeries& ts, std::int64_t window);

/// Number variance Sigma^2(L) = <(n(L) - L)^2> with the average taken
/// exactly over all window positions on the circle (phases rescaled to
/// unit mean spacing first).
std::vector<double> number_variance(const std::vector<double>& phases,
                                    const std::vector<double>& l_values);

}  // namespace intermap

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>

#include "intermap/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

namespace intermap {
namespace {

void check_unitarity(const ComplexMatrix& u, double tol) {
    if (u.rows() != u.cols()) {
        throw ConfigError("eigensystem: matrix must be square");
    }
    if (tol > 0.0) {
        const double residual = u.unitarity_residual();
        if (residual > tol) {
            throw NumericalError("eigensystem: unitarity residual " +
                                 std::to_string(residual) +
                                 " above tolerance");
        }
    }
}

/// zgeev on a scratch copy; vr may be null for a phases-only solve.
std::vector<cdouble> zgeev_eigenvalues(const ComplexMatrix& u,
                                       ComplexMatrix* vr) {
    const auto n = static_cast<lapack_int>(u.rows());
    ComplexMatrix a = u;  // overwritten by LAPACK
    std::vector<cdouble> w(u.rows());
    lapack_int info = 0;
    // LAPACKE's row-major wrapper validates ldvl/ldvr >= n even for 'N'.
    if (vr != nullptr) {
        *vr = ComplexMatrix(u.rows(), u.rows());
        info = LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'V', n, a.data(), n,
                             w.data(), nullptr, n, vr->data(), n);
    } else {
        info = LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, a.data(), n,
                             w.data(), nullptr, n, nullptr, n);
    }
    if (info != 0) {
        throw NumericalError("zgeev failed to converge, info = " +
                             std::to_string(info));
    }
    return w;
}

double phase_of(const cdouble& z) {
    double theta = std::arg(z);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi) theta -= kTwoPi;
    return theta;
}

void check_unit_modulus(const std::vector<cdouble>& w) {
    for (const cdouble& z : w) {
        if (std::abs(std::abs(z) - 1.0) > 1e-8) {
            throw NumericalError(
                "eigenvalue off the unit circle by " +
                std::to_string(std::abs(std::abs(z) - 1.0)));
        }
    }
}

}  // namespace

EigenSystem eigensystem(const ComplexMatrix& u, const std::string& source,
                        double unitarity_tol) {
    check_unitarity(u, unitarity_tol);
    ComplexMatrix vr;
    const std::vector<cdouble> w = zgeev_eigenvalues(u, &vr);
    check_unit_modulus(w);

    const std::size_t n = u.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> phases(n);
    for (std::size_t k = 0; k < n; ++k) phases[k] = phase_of(w[k]);
    std::sort(order.begin(), order.end(), [&phases](std::size_t a,
                                                    std::size_t b) {
        return phases[a] < phases[b];
    });

    EigenSystem eig;
    eig.phases.resize(n);
    eig.vectors = ComplexMatrix(n, n);
    eig.has_vectors = true;
    eig.source = source;
    for (std::size_t k = 0; k < n; ++k) {
        eig.phases[k] = phases[order[k]];
        for (std::size_t i = 0; i < n; ++i) {
            eig.vectors.at(i, k) = vr.at(i, order[k]);
        }
    }
    return eig;
}

std::vector<double> eigenphases(const ComplexMatrix& u, double unitarity_tol) {
    check_unitarity(u, unitarity_tol);
    const std::vector<cdouble> w = zgeev_eigenvalues(u, nullptr);
    check_unit_modulus(w);
    std::vector<double> phases(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) phases[k] = phase_of(w[k]);
    std::sort(phases.begin(), phases.end());
    return phases;
}

double eigenvector_residual(const ComplexMatrix& u, const EigenSystem& eig) {
    if (!eig.has_vectors) {
        throw ConfigError("eigenvector_residual: no eigenvectors");
    }
    ComplexMatrix uv = matmul(u, eig.vectors);
    const std::size_t n = eig.dim();
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cdouble lambda = std::polar(1.0, eig.phases[k]);
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sq += std::norm(uv.at(i, k) - lambda * eig.vectors.at(i, k));
        }
        worst = std::max(worst, std::sqrt(sq));
    }
    return worst;
}

SpacingSample unfold_spacings(const std::vector<double>& sorted_phases,
                              const std::string& metadata) {
    const std::size_t n = sorted_phases.size();
    if (n < 2) throw ConfigError("unfold_spacings: need at least 2 phases");
    SpacingSample sample;
    sample.metadata = metadata;
    sample.s.resize(n);
    const double scale = static_cast<double>(n) / kTwoPi;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        sample.s[k] = scale * (sorted_phases[k + 1] - sorted_phases[k]);
    }
    sample.s[n - 1] =
        scale * (sorted_phases[0] + kTwoPi - sorted_phases[n - 1]);
    for (double& v : sample.s) {
        if (v < 1e-12) {
            ++sample.degenerate_count;
            if (v < 0.0) v = 0.0;  // guard against rounding of ties
        }
    }
    return sample;
}

double semi_poisson_pdf(double beta, double s) {
    if (beta <= -1.0) throw ConfigError("semi_poisson: beta must be > -1");
    if (s < 0.0) return 0.0;
    if (s == 0.0) return beta == 0.0 ? beta + 1.0 : (beta < 0.0 ? INFINITY : 0.0);
    const double log_a =
        (beta + 1.0) * std::log(beta + 1.0) - std::lgamma(beta + 1.0);
    return std::exp(log_a + beta * std::log(s) - (beta + 1.0) * s);
}

double semi_poisson_cdf(double beta, double s) {
    if (beta <= -1.0) throw ConfigError("semi_poisson: beta must be > -1");
    if (s <= 0.0) return 0.0;
    return boost::math::gamma_p(beta + 1.0, (beta + 1.0) * s);
}

double poisson_pdf(double s) { return s < 0.0 ? 0.0 : std::exp(-s); }
double poisson_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

double wigner_coe_pdf(double s) {
    if (s < 0.0) return 0.0;
    const double pi = kTwoPi / 2.0;
    return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
}

double wigner_coe_cdf(double s) {
    if (s <= 0.0) return 0.0;
    const double pi = kTwoPi / 2.0;
    return 1.0 - std::exp(-0.25 * pi * s * s);
}

double wigner_cue_pdf(double s) {
    if (s < 0.0) return 0.0;
    const double pi = kTwoPi / 2.0;
    return (32.0 / (pi * pi)) * s * s * std::exp(-4.0 * s * s / pi);
}

double wigner_cue_cdf(double s) {
    if (s <= 0.0) return 0.0;
    const double pi = kTwoPi / 2.0;
    return std::erf(2.0 * s / std::sqrt(pi)) -
           (4.0 / pi) * s * std::exp(-4.0 * s * s / pi);
}

double ks_distance(const std::vector<double>& sample,
                   const std::function<double(double)>& cdf) {
    if (sample.empty()) throw ConfigError("ks_distance: empty sample");
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

double ks_distance(const SpacingSample& sample,
                   const std::function<double(double)>& cdf) {
    return ks_distance(sample.s, cdf);
}

TraceSeries trace_series(const std::vector<double>& phases,
                         std::int64_t n_max) {
    if (n_max < 0) throw ConfigError("trace_series: n_max must be >= 0");
    TraceSeries ts;
    ts.dim = phases.size();
    ts.t.resize(static_cast<std::size_t>(n_max) + 1);
    ts.t[0] = static_cast<double>(phases.size());
    for (std::int64_t n = 1; n <= n_max; ++n) {
        cdouble sum{};
        for (const double theta : phases) {
            sum += std::polar(1.0, static_cast<double>(n) * theta);
        }
        ts.t[static_cast<std::size_t>(n)] = sum;
    }
    return ts;
}

TraceSeries trace_series(const EigenSystem& eig, std::int64_t n_max) {
    return trace_series(eig.phases, n_max);
}

KappaEstimate kappa_estimate(const TraceSeries& ts, std::int64_t window) {
    if (window < 1) throw ConfigError("kappa_estimate: window must be >= 1");
    if (static_cast<std::size_t>(window) >= ts.t.size()) {
        throw ConfigError("kappa_estimate: window exceeds trace series");
    }
    cdouble sum{};
    for (std::int64_t n = 1; n <= window; ++n) {
        sum += ts.t[static_cast<std::size_t>(n)];
    }
    KappaEstimate est;
    est.kappa = sum / (static_cast<double>(window) *
                       std::sqrt(static_cast<double>(ts.dim)));
    est.form_factor = std::norm(est.kappa);
    return est;
}

std::vector<double> number_variance(const std::vector<double>& phases,
                                    const std::vector<double>& l_values) {
    const std::size_t n = phases.size();
    if (n < 2) throw ConfigError("number_variance: need at least 2 phases");
    // Rescale to unit mean spacing on a circle of circumference n.
    std::vector<double> x(n);
    const double scale = static_cast<double>(n) / kTwoPi;
    for (std::size_t k = 0; k < n; ++k) x[k] = phases[k] * scale;
    std::sort(x.begin(), x.end());
    const double circ = static_cast<double>(n);

    std::vector<double> out;
    out.reserve(l_values.size());
    for (const double l : l_values) {
        if (l <= 0.0 || l >= circ) {
            throw ConfigError("number_variance: L out of range (0, N)");
        }
        // Count in [u, u+L) changes exactly at u = x_k (leave) and
        // u = x_k - L (enter). Integrate (count - L)^2 piecewise.
        std::vector<std::pair<double, int>> events;
        events.reserve(2 * n);
        int count0 = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (x[k] < l) ++count0;  // window [0, L) at u = 0
            double leave = x[k];
            double enter = x[k] - l;
            if (enter < 0.0) enter += circ;
            if (leave <= 0.0) leave += circ;
            events.emplace_back(leave, -1);
            events.emplace_back(enter, +1);
        }
        std::sort(events.begin(), events.end());
        double integral = 0.0;
        double prev = 0.0;
        int count = count0;
        for (const auto& [pos, delta] : events) {
            const double d = static_cast<double>(count) - l;
            integral += d * d * (pos - prev);
            count += delta;
            prev = pos;
        }
        const double d = static_cast<double>(count) - l;
        integral += d * d * (circ - prev);
        out.push_back(integral / circ);
    }
    return out;
}

}  // namespace intermap

#include "intermap/observables.hpp"

#include <cmath>

namespace intermap {

double meyer_wallach_q(const StateVector& psi, int n_q) {
    const std::size_t n = std::size_t{1} << n_q;
    if (psi.size() != n) {
        throw ConfigError("meyer_wallach_q: state length is not 2^n_q");
    }
    const double nrm = norm(psi);
    if (std::abs(nrm - 1.0) > 1e-8) {
        throw NumericalError("meyer_wallach_q: state not normalized, |norm-1| = " +
                             std::to_string(std::abs(nrm - 1.0)));
    }
    double purity_sum = 0.0;
    for (int k = 0; k < n_q; ++k) {
        const std::size_t mask = std::size_t{1} << k;
        double p00 = 0.0;
        double p11 = 0.0;
        cdouble coh{};
        for (std::size_t x = 0; x < n; ++x) {
            if (x & mask) continue;
            const cdouble a0 = psi[x];
            const cdouble a1 = psi[x | mask];
            p00 += std::norm(a0);
            p11 += std::norm(a1);
            coh += a0 * std::conj(a1);
        }
        purity_sum += p00 * p00 + p11 * p11 + 2.0 * std::norm(coh);
    }
    return 2.0 - 2.0 / static_cast<double>(n_q) * purity_sum;
}

double ipr(const StateVector& psi) {
    double s2 = 0.0;
    double s4 = 0.0;
    for (const cdouble& z : psi) {
        const double w = std::norm(z);
        s2 += w;
        s4 += w * w;
    }
    if (s4 == 0.0) throw NumericalError("ipr: zero vector");
    return s2 * s2 / s4;
}

StateVector haar_state(std::size_t n, RngStream& rng) {
    StateVector psi(n);
    for (cdouble& z : psi) {
        z = {rng.gaussian(1.0), rng.gaussian(1.0)};
    }
    normalize(psi);
    return psi;
}

IntensitySample column_intensities(const std::vector<StateVector>& columns,
                                   const std::string& representation,
                                   const std::string& metadata) {
    IntensitySample sample;
    sample.representation = representation;
    sample.metadata = metadata;
    for (const StateVector& col : columns) {
        const double scale = static_cast<double>(col.size());
        for (const cdouble& z : col) {
            sample.y.push_back(scale * std::norm(z));
        }
    }
    return sample;
}

ScalingSeries fit_power_law(const std::vector<ScalingPoint>& points) {
    if (points.size() < 3) {
        throw ConfigError("fit_power_law: need at least 3 points");
    }
    ScalingSeries series;
    series.points = points;
    const double n = static_cast<double>(points.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const ScalingPoint& p : points) {
        const double x = std::log2(static_cast<double>(p.n_dim));
        const double y = std::log2(p.mean_xi);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ConfigError("fit_power_law: degenerate abscissae");
    series.gamma = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - series.gamma * sx) / n;
    double rss = 0.0;
    for (const ScalingPoint& p : points) {
        const double x = std::log2(static_cast<double>(p.n_dim));
        const double y = std::log2(p.mean_xi);
        const double r = y - (series.gamma * x + intercept);
        rss += r * r;
    }
    series.residual = std::sqrt(rss / n);
    return series;
}

}  // namespace intermap

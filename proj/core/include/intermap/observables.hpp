#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "intermap/complex_matrix.hpp"
#include "intermap/rng.hpp"

namespace intermap {

/// Meyer-Wallach entanglement Q = 2 - (2/n_q) sum_k Tr rho_k^2 of a
/// normalized n_q-qubit state; 0 on product states, -> 1 when every qubit
/// is maximally mixed.
double meyer_wallach_q(const StateVector& psi, int n_q);

/// Inverse participation ratio xi = (sum |psi_i|^2)^2 / sum |psi_i|^4;
/// 1 on a basis state, N on a uniformly spread state. Scale-invariant.
double ipr(const StateVector& psi);

/// Haar-random state: N independent standard complex Gaussians, normalized.
StateVector haar_state(std::size_t n, RngStream& rng);

/// Rescaled matrix-element intensities y = N |x|^2 pooled from a set of
/// unitary columns.
struct IntensitySample {
    std::vector<double> y;
    std::string representation;
    std::string metadata;
};

IntensitySample column_intensities(const std::vector<StateVector>& columns,
                                   const std::string& representation,
                                   const std::string& metadata = "");

/// (N, <xi>) points with the fitted scaling exponent gamma of
/// xi proportional to N^gamma (least squares in log2-log2).
struct ScalingPoint {
    std::size_t n_dim = 0;
    double mean_xi = 0.0;
    double std_xi = 0.0;
    std::size_t ensemble = 0;
};

struct ScalingSeries {
    std::vector<ScalingPoint> points;
    double gamma = 0.0;
    double residual = 0.0;  // RMS of log2 fit residuals
};

ScalingSeries fit_power_law(const std::vector<ScalingPoint>& points);

}  // namespace intermap

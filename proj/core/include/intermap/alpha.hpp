#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "intermap/common.hpp"

namespace intermap {

/// Kick strength of the map. Rational values are kept as an exact reduced
/// fraction so that all congruence conditions are decided in integer
/// arithmetic; irrational values are a user declaration carried as float64.
class Alpha {
public:
    static Alpha rational(std::int64_t a, std::int64_t b);
    static Alpha real(double value);
    /// (1+sqrt(5))/2, the standard irrational reference point.
    static Alpha golden();

    /// Accepts "a/b", a decimal literal, or the keyword "golden".
    static Alpha parse(const std::string& text);

    bool is_rational() const { return rational_; }
    std::int64_t numerator() const;
    std::int64_t denominator() const;

    /// Fractional value in [0,1). Only this matters to any operator.
    double value() const;
    /// Raw value as given (may exceed 1, e.g. golden mean 1.618...).
    double raw() const;

    /// The partner map alpha -> 1 - alpha used when pooling spectra.
    Alpha one_minus() const;

    std::string to_string() const;

    bool operator==(const Alpha& other) const;

private:
    Alpha() = default;
    bool rational_ = false;
    std::int64_t a_ = 0;
    std::int64_t b_ = 1;
    double real_ = 0.0;
};

enum class Variant { deterministic, isrm_nonsymmetric, isrm_symmetric };
enum class PhaseModel { uniform, gaussian };

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

/// Semi-Poisson exponent conjectured for alpha = a/b when a*N = +-1 (mod b):
/// beta = b/2 - 1 for the deterministic map and symmetric ISRM,
/// beta = b - 1 for non-symmetric ISRM. Empty when the congruence fails or
/// alpha is irrational.
std::optional<double> predicted_beta(const Alpha& alpha, std::int64_t n_dim,
                                     Variant variant);

/// Complete recipe for one unitary.
struct MapSpec {
    int n_q = 2;
    Alpha alpha = Alpha::real(0.0);
    Variant variant = Variant::deterministic;
    PhaseModel phase_model = PhaseModel::uniform;
    double sigma = kTwoPi;        // gaussian phase model only
    std::uint64_t seed = 0;       // ISRM only

    std::int64_t dim() const { return std::int64_t{1} << n_q; }
    void validate() const;

    /// Stable canonical byte encoding; basis of the cache key and the
    /// provenance hash column. Deterministic-variant specs ignore
    /// phase_model/sigma/seed.
    std::string canonical_encoding() const;
    std::uint64_t hash() const;
};

std::uint64_t fnv1a64(const void* data, std::size_t n,
                      std::uint64_t seed = 1469598103934665603ULL);

}  // namespace intermap

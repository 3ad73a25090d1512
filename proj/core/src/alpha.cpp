#include "intermap/alpha.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

namespace intermap {

std::string version_string() {
#ifdef INTERMAP_VERSION_STRING
    return INTERMAP_VERSION_STRING;
#else
    return "unknown";
#endif
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

Alpha Alpha::rational(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 2) {
        throw ConfigError("Alpha::rational requires a >= 1 and b >= 2");
    }
    const std::int64_t g = std::gcd(a, b);
    a /= g;
    b /= g;
    if (b < 2) {
        throw ConfigError("Alpha::rational reduces to an integer; use real()");
    }
    Alpha alpha;
    alpha.rational_ = true;
    alpha.a_ = a;
    alpha.b_ = b;
    return alpha;
}

Alpha Alpha::real(double value) {
    if (!std::isfinite(value)) {
        throw ConfigError("Alpha::real requires a finite value");
    }
    Alpha alpha;
    alpha.rational_ = false;
    alpha.real_ = value;
    return alpha;
}

Alpha Alpha::golden() { return real((1.0 + std::sqrt(5.0)) / 2.0); }

Alpha Alpha::parse(const std::string& text) {
    if (text == "golden") return golden();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            std::size_t pos_a = 0;
            std::size_t pos_b = 0;
            const std::int64_t a = std::stoll(text.substr(0, slash), &pos_a);
            const std::int64_t b = std::stoll(text.substr(slash + 1), &pos_b);
            if (pos_a != slash || pos_b != text.size() - slash - 1) {
                throw ConfigError("bad rational alpha: '" + text + "'");
            }
            return rational(a, b);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad rational alpha: '" + text + "'");
        }
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad alpha: '" + text + "'");
    }
    if (pos != text.size()) {
        throw ConfigError("bad alpha: '" + text + "'");
    }
    return real(v);
}

std::int64_t Alpha::numerator() const {
    if (!rational_) throw ConfigError("numerator() on irrational alpha");
    return a_;
}

std::int64_t Alpha::denominator() const {
    if (!rational_) throw ConfigError("denominator() on irrational alpha");
    return b_;
}

double Alpha::value() const {
    if (rational_) {
        return static_cast<double>(a_ % b_) / static_cast<double>(b_);
    }
    double f = std::fmod(real_, 1.0);
    if (f < 0.0) f += 1.0;
    return f;
}

double Alpha::raw() const {
    return rational_ ? static_cast<double>(a_) / static_cast<double>(b_)
                     : real_;
}

Alpha Alpha::one_minus() const {
    if (rational_) {
        return rational(b_ - (a_ % b_), b_);
    }
    return real(1.0 - value());
}

std::string Alpha::to_string() const {
    std::ostringstream out;
    if (rational_) {
        out << a_ << "/" << b_;
    } else {
        out.precision(17);
        out << real_;
    }
    return out.str();
}

bool Alpha::operator==(const Alpha& other) const {
    if (rational_ != other.rational_) return false;
    if (rational_) return a_ == other.a_ && b_ == other.b_;
    return real_ == other.real_;
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::deterministic: return "det";
        case Variant::isrm_nonsymmetric: return "isrm-nonsym";
        case Variant::isrm_symmetric: return "isrm-sym";
    }
    return "?";
}

std::optional<Variant> variant_from_name(const std::string& name) {
    if (name == "det" || name == "deterministic") {
        return Variant::deterministic;
    }
    if (name == "isrm-nonsym" || name == "isrm_nonsymmetric") {
        return Variant::isrm_nonsymmetric;
    }
    if (name == "isrm-sym" || name == "isrm_symmetric") {
        return Variant::isrm_symmetric;
    }
    return std::nullopt;
}

std::optional<double> predicted_beta(const Alpha& alpha, std::int64_t n_dim,
                                     Variant variant) {
    if (!alpha.is_rational()) return std::nullopt;
    const std::int64_t b = alpha.denominator();
    const std::int64_t r =
        ((alpha.numerator() % b) * (n_dim % b)) % b;
    const bool holds = (r == 1 % b) || (r == (b - 1) % b);
    if (!holds) return std::nullopt;
    if (variant == Variant::isrm_nonsymmetric) {
        return static_cast<double>(b) - 1.0;
    }
    return static_cast<double>(b) / 2.0 - 1.0;
}

void MapSpec::validate() const {
    if (n_q < 1 || n_q > 30) {
        throw ConfigError("MapSpec: n_q out of range [1,30]");
    }
}

std::string MapSpec::canonical_encoding() const {
    std::ostringstream out;
    out << "nq=" << n_q << ";alpha=" << alpha.to_string()
        << ";variant=" << variant_name(variant);
    if (variant != Variant::deterministic) {
        out << ";phase="
            << (phase_model == PhaseModel::uniform ? "uniform" : "gaussian");
        if (phase_model == PhaseModel::gaussian) {
            out.precision(17);
            out << ";sigma=" << sigma;
        }
        out << ";seed=" << seed;
    }
    return out.str();
}

std::uint64_t MapSpec::hash() const {
    const std::string enc = canonical_encoding();
    return fnv1a64(enc.data(), enc.size());
}

}  // namespace intermap

#include "intermap/rng.hpp"

#include <cmath>

#include "intermap/common.hpp"

namespace intermap {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_(master_seed), index_(stream_index) {
    std::uint64_t s = master_seed;
    const std::uint64_t h1 = splitmix64(s);
    s ^= stream_index * 0xA0761D6478BD642FULL + 0xE7037ED1A0B428DBULL;
    const std::uint64_t h2 = splitmix64(s);
    engine_.seed(h1 ^ (h2 + 0x9E3779B97F4A7C15ULL + (h1 << 6) + (h1 >> 2)));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_angle() { return kTwoPi * uniform(); }

double RngStream::gaussian(double sigma) {
    // Box-Muller; u1 nudged away from 0 so log stays finite.
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1 + 0x1.0p-60));
    return sigma * r * std::cos(kTwoPi * u2);
}

int RngStream::uniform_int(int n) {
    if (n <= 0) throw ConfigError("uniform_int requires n > 0");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return static_cast<int>(x % un);
}

}  // namespace intermap

#pragma once

#include <cstdint>
#include <random>

namespace intermap {

/// Reproducible random stream addressed by (master_seed, stream_index).
/// Streams with the same address replay bit-identically; distinct indices
/// are decorrelated by a splitmix64 hash of the address, so realization k
/// of an ensemble can use stream_index = k on any worker.
///
/// All floating-point draws are generated from raw 64-bit words in-house
/// (std::<distribution> types are implementation-defined and would break
/// bit-reproducibility of outputs).
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    /// Uniform in [0,1) with 53-bit resolution.
    double uniform();
    /// Uniform in [0, 2*pi).
    double uniform_angle();
    /// N(0, sigma^2) via Box-Muller (two uniforms per draw, no spare cache).
    double gaussian(double sigma);
    /// Uniform integer in [0, n), unbiased by rejection.
    int uniform_int(int n);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_index() const { return index_; }

private:
    std::uint64_t master_ = 0;
    std::uint64_t index_ = 0;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace intermap

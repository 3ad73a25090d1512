#pragma once

#include <string>

#include "intermap/alpha.hpp"
#include "intermap/complex_matrix.hpp"

namespace intermap::harness {

/// Binary matrix cache, format "IQMP":
///   magic "IQMP" | version u16 | n_q u8 | variant u8 |
///   alpha flag u8 (0 = rational, 1 = real) |
///   a u64, b u64  (rational)  OR  value float64 (real) |
///   seed u64 | payload N^2 row-major little-endian float64 pairs.
/// The stored matrix is the momentum-representation build.

void write_matrix_cache(const std::string& path, const MapSpec& spec,
                        const ComplexMatrix& matrix);

struct CachedMatrix {
    MapSpec spec;
    ComplexMatrix matrix;
};

CachedMatrix read_matrix_cache(const std::string& path);
ComplexMatrix load_matrix(const std::string& path);

struct CacheResult {
    std::string path;
    bool hit = false;
};

/// Ensure the matrix for `spec` exists under `dir` (key = spec hash),
/// building it on a miss. Reports hits so callers can log skipped rebuilds.
CacheResult cache_matrix(const MapSpec& spec, const std::string& dir);

}  // namespace intermap::harness

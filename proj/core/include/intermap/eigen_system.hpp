#pragma once

#include <string>
#include <vector>

#include "intermap/complex_matrix.hpp"

namespace intermap {

/// Eigen-decomposition of a unitary: sorted eigenphases in [0, 2pi) and,
/// unless computed phases-only, the matching eigenvector columns.
struct EigenSystem {
    std::vector<double> phases;
    ComplexMatrix vectors;       // column k pairs with phases[k]
    bool has_vectors = false;
    std::string source;          // spec encoding + block tag, for provenance

    std::size_t dim() const { return phases.size(); }
};

}  // namespace intermap

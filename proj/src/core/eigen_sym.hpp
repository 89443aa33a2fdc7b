#pragma once

#include <vector>

#include "matrix.hpp"

namespace ecocut {

struct spectral_summary {
    std::vector<double> values; // ascending
    matrix vectors;             // orthonormal columns, aligned with values
    int source_n = 0;

    std::vector<double> vector_at(int j) const {
        std::vector<double> v(static_cast<std::size_t>(source_n));
        for (int i = 0; i < source_n; ++i) v[static_cast<std::size_t>(i)] = vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return v;
    }
};

// Full spectrum of a symmetric matrix via cyclic Jacobi rotations. Converged
// when every off-diagonal magnitude is below 1e-12 * ||M||_F; at most 100
// sweeps. Eigenvalues ascend; each eigenvector's first component with
// magnitude > 1e-9 is made positive.
spectral_summary eigen_sym(const matrix& m);

} // namespace ecocut

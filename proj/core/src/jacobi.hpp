#pragma once

#include <vector>

namespace layerchain::detail {

struct EigenResult {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // vectors[m] pairs with values[m]
};

// Cyclic Jacobi diagonalization of a real symmetric matrix.
//
// Deterministic by construction: fixed row-major sweep order, convergence on
// off-diagonal Frobenius norm <= 1e-14 * ||A||_F, eigenvalues sorted
// ascending.  Within a degenerate cluster (relative gap <= 1e-9) the basis is
// re-fixed by Gram-Schmidt against the coordinate axes in index order, and
// each eigenvector is normalized so its largest-magnitude component is
// positive.
//
// Throws domain_error when the input is not symmetric and numeric_error when
// rotations fail to converge.
EigenResult jacobi_eigen(std::vector<std::vector<double>> a);

}  // namespace layerchain::detail

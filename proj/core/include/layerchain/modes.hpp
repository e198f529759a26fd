#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "layerchain/model.hpp"

namespace layerchain {

// Quadratic form of the layer-coordinate problem: kinetic masses M_k and a
// stiffness matrix K with V = (1/2) R^T K R (units m*w0^2).  K carries both
// the one-body trap terms and the pair terms.
struct QuadraticForm {
    std::vector<double> masses;
    std::vector<std::vector<double>> stiffness;
};

struct NormalModeSet {
    std::vector<double> frequencies;  // ascending, units w0
    // eigenvectors[m][k]: mode m in mass-weighted coordinates; orthonormal.
    std::vector<std::vector<double>> eigenvectors;
    // Mode parallel (overlap >= 1 - 1e-8) to the mass-weighted uniform
    // vector, when one exists.
    std::optional<int> cm_index;
};

struct StringLevel {
    double energy = 0.0;  // units hbar*w0
    std::uint64_t degeneracy = 1;
    std::vector<int> quanta;  // one entry per non-CM mode, ascending mode order
    bool merged = false;      // combined from levels closer than 1e-9
};

// Pair (i,k) contributes c_ik (R_i - R_k)^2 with
//   c_ik = (1/2) * occ_i * occ_k * mu_ik * w_ik^2,  mu_ik = m_i m_k/(m_i+m_k),
// plus the one-body term (1/2) M_k w_0k^2 R_k^2 on the diagonal.  The center
// of mass is not projected out; it emerges as an eigenmode.
// Throws domain_error when the spec violates the decoupling condition.
QuadraticForm build_interlayer_form(const SystemSpec& spec);

// Eigenmodes of D^{-1/2} K D^{-1/2}.  Eigenvalues in [-1e-10, 0] clamp to
// zero (free center of mass); anything lower throws numeric_error.
NormalModeSet normal_modes(const QuadraticForm& form);

// All excitation levels of the non-CM modes with total energy
//   E = sum_k w'_k (n_k + D/2) <= energy_cap,
// with exact degeneracy counting (each mode contributes D Cartesian copies).
// Levels closer than 1e-9 are merged and flagged.  The CM mode is excluded.
std::vector<StringLevel> string_spectrum(const NormalModeSet& modes,
                                         int dimension, double energy_cap);

}  // namespace layerchain

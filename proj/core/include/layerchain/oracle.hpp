#pragma once

#include <random>
#include <vector>

#include "layerchain/model.hpp"

namespace layerchain {

// Spectrum of the stiffness over every particle coordinate, computed without
// the layer-coordinate reduction.
struct FullHessianResult {
    std::vector<double> frequencies;  // ascending, one per particle coordinate
    // Frobenius norm of the cross block between layer center-of-mass and
    // relative coordinates after rotating each doubly occupied layer to
    // (R, r), units m*w0^2.  Zero exactly when the pair-frequency condition
    // holds.
    double coupling_residual = 0.0;
};

// Brute-force diagonalization over all particle coordinates, consuming the
// bond declarations as given (no collapsing).  Intra kinds are limited to
// none and harmonic; at most 64 coordinates.
FullHessianResult full_hessian_spectrum(const SystemSpec& spec);

// The frequency multiset the reduction predicts: every interlayer mode
// (center of mass included) plus sqrt(w_k^2 + Omega_k^2) per doubly occupied
// layer.  Built from the collapsed pair frequencies; declared tuples are not
// consulted, so it is well defined even for condition-violating specs.
std::vector<double> decoupled_frequency_union(const SystemSpec& spec);

// Largest absolute difference after sorting both sequences; infinity when the
// lengths differ.
double multiset_distance(std::vector<double> a, std::vector<double> b);

// Finite-difference eigenvalues of a trapped 1D problem on (0, L], solved at
// the base step and at half the step, then Richardson-extrapolated.
struct GridSolution {
    double grid_step = 0.0;      // base (coarser) step
    double domain_length = 0.0;
    std::vector<double> lowest_energies;  // extrapolated, ascending, hbar*w
    double richardson_error = 0.0;        // max |E(h) - E(h/2)| / 3
    double boundary_kind = 0.0;  // Robin length a1 at the origin; 0 = Dirichlet
};

// Even-sector levels of the trapped pair with a contact interaction encoded
// by the origin condition psi'(0+) = psi(0)/a1.  Throws numeric_error when
// the Richardson estimate exceeds 5e-4 (resolution too coarse).
GridSolution grid_delta1d(double a1_over_b, int levels, int base_nodes = 4000,
                          double domain = 14.0);

// Radial levels of the trap plus g/(2x^2) barrier with u(0) = u(L) = 0.
GridSolution grid_inverse_square(double g, int levels, int base_nodes = 6000,
                                 double domain = 14.0);

// <x^2> of the lowest grid eigenstate of the inverse-square problem, using
// the same grid pair and extrapolation as grid_inverse_square.
double grid_ground_msr(double g, int base_nodes = 6000, double domain = 14.0);

// Random chain of 2-4 layers with mixed occupancy, per-layer masses and
// traps, and bond tuples built to satisfy the pair-frequency condition
// exactly.  Draws only raw rng() words, so a fixed seed gives the same spec
// everywhere.
SystemSpec random_decoupled_spec(std::mt19937_64& rng);

// Same families, but the (0, 1) four-bond tuple is knocked off the condition
// surface by an O(1) amount.
SystemSpec random_violating_spec(std::mt19937_64& rng);

}  // namespace layerchain

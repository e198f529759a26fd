#pragma once

#include <vector>

namespace layerchain {

enum class IntraLevelKind { inverse_square, delta1d_even, delta1d_odd, delta2d_s };

// One relative-motion level of a trapped interacting pair.  Energies are in
// units of hbar*w_k and mean square radii in units of the relative oscillator
// length squared b^2 = hbar/(mu w_k).
struct IntraLevel {
    IntraLevelKind kind = IntraLevelKind::inverse_square;
    // nu for the delta kinds (odd 1D levels use n + 1/2 so E = 2 nu + 1/2
    // holds across the 1D tower); the integer n for inverse_square.
    double quantum_number = 0.0;
    double l_eff = 0.0;  // inverse_square only, 0 otherwise
    double energy = 0.0;
    double msr = 0.0;
    // w_k in units of w0, for converting energy to hbar*w0.  Solvers return 1;
    // assembly stamps the actual layer value.
    double omega_k = 1.0;
};

// Inverse-square-plus-trap levels.  l_eff = sqrt(g + 1/4) - 1/2 in 1D,
// sqrt(g + l2^2/4) - 1/2 in 2D, sqrt(g + (l + 1/2)^2) - 1/2 in 3D, and
// E = 2n + l_eff + 3/2 with msr equal to the same number.
std::vector<IntraLevel> inverse_square_levels(double g, int dimension,
                                              int angular, int count);

// 1D delta-plus-trap tower.  Returns `count` even-sector roots (one per
// interval (n, n + 1/2) of the transcendental equation) interleaved with
// `count` unshifted odd oscillator levels, sorted by energy.
std::vector<IntraLevel> delta1d_levels(double a1_over_b, int count);

// 2D delta-plus-trap s-levels: `count` roots of
//   gamma_E + psi(-nu)/2 = ln(b/a2),  one per interval (n, n + 1).
std::vector<IntraLevel> delta2d_levels(double ln_b_over_a2, int count);

// <x^2>/b^2 by two independent routes.  `strength` repeats the solver input:
// a1/b for the 1D kinds, ln(b/a2) for 2D.
struct MsrRoutes {
    double quadrature;        // normalized integral of x^2 |psi|^2
    double hellmann_feynman;  // implicit derivative of the eigenvalue equation
};
MsrRoutes delta_msr_routes(const IntraLevel& level, double strength);

// The quadrature value, after checking the two routes agree within 1e-3
// (numeric_error otherwise).
double delta_msr(const IntraLevel& level, double strength);

// Unnormalized radial/even amplitude at x/b > 0.
double wavefunction_eval(const IntraLevel& level, double x_over_b);

}  // namespace layerchain

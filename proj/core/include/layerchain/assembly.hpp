#pragma once

#include <vector>

#include "layerchain/model.hpp"

namespace layerchain {

// Ground-state energy of a chain split by source, units hbar*w0.  `total` is
// defined as the sum of the other fields, in the order written below.
struct EnergyBudget {
    double e_string = 0.0;  // zero-point of the non-CM interlayer modes
    std::vector<double> e_intra_per_layer;  // one entry per layer; 0 when singly occupied
    double e_cm = 0.0;      // center-of-mass zero-point
    double v_shift = 0.0;   // constant bond-calibration offset (<= 0)
    double total = 0.0;

    double e_intra_sum() const;
};

// Ground energy of the decoupled problem:
//   E = (D/2) sum' w_m  +  (D/2) w_cm  +  sum_k E_k  +  V_shift.
// Each doubly occupied layer contributes the ground level of its relative
// motion at the effective frequency w_k.  Delta scattering lengths are
// declared in units of the layer trap length and convert to the relative
// oscillator length via a * sqrt(mu_k w_k / w_0k).  When no eigenmode
// matches the center of mass (unequal traps), every mode counts toward
// e_string and e_cm is zero.
// Throws domain_error on invalid specs or decoupling violations.
EnergyBudget total_ground_energy(const SystemSpec& spec, const ShiftModel& shifts);

struct SeparationPoint {
    int n_layers = 0;
    // [E(double chain) - 2 E(single chain)] / N, without and with the
    // zero-point shift difference.
    double de_per_layer = 0.0;
    double de_per_layer_shifted = 0.0;
};

struct SeparationCurve {
    int dimension = 1;
    IntraPotential intra;
    double e12 = 0.0;
    std::vector<SeparationPoint> points;  // N = 2 .. n_max in order
};

// Cost per layer of keeping two particles in every layer instead of two
// independent single chains, for N = 2..n_max.  Both chains share omega0 = 1,
// equal unit masses and the same nearest-neighbour omega12_sq; the single
// chain carries no intra term.  threads = 0 picks the hardware count.
SeparationCurve separation_curve(int n_max, int dimension,
                                 const IntraPotential& intra, double e12 = 0.0,
                                 double omega12_sq = 9.0, int threads = 0);

enum class SweepAxis { n_layers, inverse_square_g, a1_over_b, ln_b_over_a2 };

// Chain held fixed while one axis varies.  The intra kind must match the
// axis: inverse_square_g needs an inverse_square template, a1_over_b a delta
// template in 1D, ln_b_over_a2 a delta template in 2D; n_layers accepts any
// kind and overrides n_layers per row.
struct SweepTemplate {
    int n_layers = 30;
    int dimension = 1;
    double omega12_sq = 9.0;
    IntraPotential intra;
    double e12 = 0.0;
    bool shift_enabled = false;
};

struct SweepRow {
    double axis_value = 0.0;
    EnergyBudget budget;
    double mode_min = 0.0;  // lowest and highest non-CM mode, units w0
    double mode_max = 0.0;
    // Ground-level observables of the first (outer) layer: the principal
    // quantum number and <x^2> in units of that layer's oscillator length
    // squared.  msr_minus_dm1 subtracts the D - 1 background.
    double nu0_outer = 0.0;
    double msr_outer = 0.0;
    double msr_minus_dm1 = 0.0;
};

struct SweepTable {
    SweepAxis axis = SweepAxis::n_layers;
    SweepTemplate fixed;
    std::vector<SweepRow> rows;  // input order, one per requested value
};

// Evaluates one doubly occupied chain per axis value.  Points may run on
// several threads; rows always land in input order and the numbers do not
// depend on the thread count.  Throws domain_error for axis/kind mismatches
// or out-of-domain axis values.
SweepTable sweep(SweepAxis axis, const std::vector<double>& values,
                 const SweepTemplate& templ, int threads = 0);

}  // namespace layerchain

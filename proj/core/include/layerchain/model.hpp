#pragma once

#include <utility>
#include <vector>

namespace layerchain {

// Residual threshold (units w0^2) below which a pair-frequency pattern counts
// as decoupled.
inline constexpr double kDecouplingTolerance = 1e-10;

enum class IntraKind { none, inverse_square, delta, harmonic };

// Interaction between the two particles of a doubly occupied layer.
//  - inverse_square: strength = g (dimensionless)
//  - delta:          strength = a_D, the scattering length in units of the
//                    reference trap length sqrt(hbar/(m_ref w0))
//  - harmonic:       strength = Omega in units of w0 (cross-check use only)
struct IntraPotential {
    IntraKind kind = IntraKind::none;
    double strength = 0.0;

    static IntraPotential none() { return {IntraKind::none, 0.0}; }
    static IntraPotential inverse_square(double g) { return {IntraKind::inverse_square, g}; }
    static IntraPotential delta(double a) { return {IntraKind::delta, a}; }
    static IntraPotential harmonic(double omega) { return {IntraKind::harmonic, omega}; }
};

struct LayerSpec {
    int occupancy = 2;       // 1 or 2
    double mass = 1.0;       // per particle; both particles of a pair share it
    IntraPotential intra;    // ignored for occupancy 1
};

// Squared bond frequencies between two layers as originally declared.
// `omega2` holds 1, 2, or 4 entries:
//   1  one shared frequency (the collapsed default);
//   2  a (double, single) pair, order [bond of the first particle of the
//      doubly occupied layer, bond of its second particle];
//   4  a (double, double) pair, order [w_ik, w_ik', w_i'k, w_i'k'] where the
//      prime marks the second particle of a layer.
struct PairCoupling {
    int i = 0;
    int k = 0;
    std::vector<double> omega2;
};

struct SystemSpec {
    int dimension = 1;  // spatial dimension D of every layer
    std::vector<LayerSpec> layers;
    std::vector<double> omega0;  // per-layer trap frequency, units w0
    // Collapsed symmetric matrix of squared pair frequencies, units w0^2,
    // zero diagonal.  This is what every solver consumes.
    std::vector<std::vector<double>> interlayer_omega2;
    // Bond declarations as given, kept for residual reporting and for the
    // brute-force verifier.  Empty entries mean "use the collapsed value".
    std::vector<PairCoupling> couplings;
    double reference_mass = 1.0;

    int n_layers() const { return static_cast<int>(layers.size()); }
    int n_particles() const;
    double layer_total_mass(int k) const;

    // Throws domain_error when structurally invalid (sizes, symmetry, signs,
    // occupancy, dimension).
    void validate() const;
};

// Assemble a spec from bond declarations.  Each coupling collapses to the
// mean of its declared squared frequencies; the originals are retained.
SystemSpec make_system(int dimension, std::vector<LayerSpec> layers,
                       std::vector<double> omega0,
                       std::vector<PairCoupling> couplings,
                       double reference_mass = 1.0);

// Uniform chain with nearest-neighbour coupling omega12_sq, equal masses and
// traps: the default illustration setup.
SystemSpec nearest_neighbor_chain(int n_layers, int occupancy, int dimension,
                                  double omega12_sq,
                                  const IntraPotential& intra = IntraPotential::none(),
                                  double omega0 = 1.0, double mass = 1.0);

// Every layer pair coupled with the same squared frequency omega_r_sq.
SystemSpec uniform_coupling(int n_layers, int occupancy, int dimension,
                            double omega_r_sq, double omega0 = 1.0,
                            double mass = 1.0);

// Bond binding constants e_ik >= 0 of the zero-point shift.
struct ShiftModel {
    std::vector<std::vector<double>> e;  // symmetric, zero diagonal
    bool enabled = false;

    static ShiftModel none() { return {}; }
    // Uniform e12 on nearest-neighbour pairs, zero elsewhere.
    static ShiftModel nearest_neighbor(int n_layers, double e12);
};

struct DecouplingReport {
    bool satisfied = true;
    double worst_violation = 0.0;  // units w0^2
    std::vector<std::pair<int, int>> violating_pairs;
};

// Residual of the pair-frequency compatibility condition for every declared
// coupling: |w_ik^2 + w_i'k'^2 - w_ik'^2 - w_i'k^2| for (double, double)
// pairs, |w_ik^2 - w_i'k^2| for (double, single) pairs, zero for collapsed
// or (single, single) declarations.  Throws domain_error on malformed specs.
DecouplingReport validate_decoupling(const SystemSpec& spec);

// Effective relative-motion frequency w_k of a doubly occupied layer:
//   w_k^2 = w_0k^2 + sum_i occ_i * [m_i/(m_i + m_k)] * w_ki^2.
double effective_intra_frequency(const SystemSpec& spec, int k);

// Total zero-point shift, units hbar*w0:
//   V_shift = -(D/2) * sum_{i<k} (bond count) * (e_ik + 1) * w_ik
// with bond count occ_i * occ_k.  Zero when shifts.enabled is false.
double zero_point_shift(const SystemSpec& spec, const ShiftModel& shifts);

// w_CM^2 = sum_k M_k w_0k^2 / sum_k M_k.
double cm_frequency(const SystemSpec& spec);

}  // namespace layerchain

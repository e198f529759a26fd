#include "layerchain/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>

#include "layerchain/errors.hpp"

namespace layerchain {

namespace {

std::string pair_label(int i, int k) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "(%d, %d)", i, k);
    return buf;
}

}  // namespace

int SystemSpec::n_particles() const {
    int n = 0;
    for (const LayerSpec& layer : layers) n += layer.occupancy;
    return n;
}

double SystemSpec::layer_total_mass(int k) const {
    return layers[k].occupancy * layers[k].mass;
}

void SystemSpec::validate() const {
    const int n = n_layers();
    if (n < 1) throw domain_error("spec: at least one layer required");
    if (dimension < 1 || dimension > 3)
        throw domain_error("spec: dimension must be 1, 2, or 3");
    if (reference_mass <= 0.0) throw domain_error("spec: reference mass must be positive");
    if (static_cast<int>(omega0.size()) != n)
        throw domain_error("spec: omega0 size does not match layer count");
    if (static_cast<int>(interlayer_omega2.size()) != n)
        throw domain_error("spec: coupling matrix size does not match layer count");

    for (int k = 0; k < n; ++k) {
        const LayerSpec& layer = layers[k];
        if (layer.occupancy != 1 && layer.occupancy != 2)
            throw domain_error("spec: layer occupancy must be 1 or 2");
        if (layer.mass <= 0.0) throw domain_error("spec: layer mass must be positive");
        if (omega0[k] < 0.0) throw domain_error("spec: trap frequency must be >= 0");
        if (layer.occupancy == 2) {
            if (layer.intra.kind == IntraKind::inverse_square && layer.intra.strength < 0.0)
                throw domain_error("spec: inverse-square strength g must be >= 0");
            if (layer.intra.kind == IntraKind::delta) {
                if (layer.intra.strength <= 0.0)
                    throw domain_error("spec: delta scattering length must be positive");
                if (dimension == 3)
                    throw domain_error("spec: delta interaction is defined for D = 1, 2 only");
            }
            if (layer.intra.kind == IntraKind::harmonic && layer.intra.strength < 0.0)
                throw domain_error("spec: harmonic intra frequency must be >= 0");
        }
    }

    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(interlayer_omega2[i].size()) != n)
            throw domain_error("spec: coupling matrix is not square");
        if (interlayer_omega2[i][i] != 0.0)
            throw domain_error("spec: coupling matrix diagonal must be zero");
        for (int k = 0; k < n; ++k) {
            const double w2 = interlayer_omega2[i][k];
            if (w2 < 0.0)
                throw domain_error("spec: negative squared frequency at pair " + pair_label(i, k));
            if (w2 != interlayer_omega2[k][i])
                throw domain_error("spec: coupling matrix is not symmetric at pair " + pair_label(i, k));
        }
    }

    std::vector<bool> declared(static_cast<std::size_t>(n) * n, false);
    for (const PairCoupling& pc : couplings) {
        if (pc.i < 0 || pc.k < 0 || pc.i >= n || pc.k >= n || pc.i == pc.k)
            throw domain_error("spec: coupling declared for invalid pair " + pair_label(pc.i, pc.k));
        const std::size_t slot =
            static_cast<std::size_t>(std::min(pc.i, pc.k)) * n + std::max(pc.i, pc.k);
        if (declared[slot])
            throw domain_error("spec: duplicate coupling declared for pair " +
                               pair_label(pc.i, pc.k));
        declared[slot] = true;
        const std::size_t sz = pc.omega2.size();
        if (sz != 1 && sz != 2 && sz != 4)
            throw domain_error("spec: coupling at pair " + pair_label(pc.i, pc.k) +
                               " must declare 1, 2, or 4 frequencies");
        const int bonds = layers[pc.i].occupancy * layers[pc.k].occupancy;
        if (sz > 1 && static_cast<int>(sz) != bonds)
            throw domain_error("spec: coupling at pair " + pair_label(pc.i, pc.k) +
                               " declares " + std::to_string(sz) + " bonds but occupancies give " +
                               std::to_string(bonds));
        for (double w2 : pc.omega2)
            if (!(w2 >= 0.0))
                throw domain_error("spec: negative squared frequency at pair " + pair_label(pc.i, pc.k));
    }
}

SystemSpec make_system(int dimension, std::vector<LayerSpec> layers,
                       std::vector<double> omega0,
                       std::vector<PairCoupling> couplings,
                       double reference_mass) {
    SystemSpec spec;
    spec.dimension = dimension;
    spec.layers = std::move(layers);
    spec.omega0 = std::move(omega0);
    spec.couplings = std::move(couplings);
    spec.reference_mass = reference_mass;

    const int n = spec.n_layers();
    spec.interlayer_omega2.assign(n, std::vector<double>(n, 0.0));
    for (const PairCoupling& pc : spec.couplings) {
        if (pc.i < 0 || pc.k < 0 || pc.i >= n || pc.k >= n || pc.i == pc.k)
            throw domain_error("spec: coupling declared for invalid pair " + pair_label(pc.i, pc.k));
        if (pc.omega2.empty())
            throw domain_error("spec: empty coupling declaration at pair " + pair_label(pc.i, pc.k));
        double mean = 0.0;
        for (double w2 : pc.omega2) mean += w2;
        mean /= static_cast<double>(pc.omega2.size());
        spec.interlayer_omega2[pc.i][pc.k] = mean;
        spec.interlayer_omega2[pc.k][pc.i] = mean;
    }

    spec.validate();
    return spec;
}

SystemSpec nearest_neighbor_chain(int n_layers, int occupancy, int dimension,
                                  double omega12_sq, const IntraPotential& intra,
                                  double omega0, double mass) {
    std::vector<LayerSpec> layers(n_layers);
    for (LayerSpec& layer : layers) {
        layer.occupancy = occupancy;
        layer.mass = mass;
        layer.intra = occupancy == 2 ? intra : IntraPotential::none();
    }
    std::vector<PairCoupling> couplings;
    couplings.reserve(n_layers > 0 ? n_layers - 1 : 0);
    for (int k = 0; k + 1 < n_layers; ++k)
        couplings.push_back({k, k + 1, {omega12_sq}});
    return make_system(dimension, std::move(layers),
                       std::vector<double>(n_layers, omega0),
                       std::move(couplings));
}

SystemSpec uniform_coupling(int n_layers, int occupancy, int dimension,
                            double omega_r_sq, double omega0, double mass) {
    std::vector<LayerSpec> layers(n_layers);
    for (LayerSpec& layer : layers) {
        layer.occupancy = occupancy;
        layer.mass = mass;
    }
    std::vector<PairCoupling> couplings;
    for (int i = 0; i < n_layers; ++i)
        for (int k = i + 1; k < n_layers; ++k)
            couplings.push_back({i, k, {omega_r_sq}});
    return make_system(dimension, std::move(layers),
                       std::vector<double>(n_layers, omega0),
                       std::move(couplings));
}

ShiftModel ShiftModel::nearest_neighbor(int n_layers, double e12) {
    ShiftModel model;
    model.enabled = true;
    model.e.assign(n_layers, std::vector<double>(n_layers, 0.0));
    for (int k = 0; k + 1 < n_layers; ++k) {
        model.e[k][k + 1] = e12;
        model.e[k + 1][k] = e12;
    }
    return model;
}

DecouplingReport validate_decoupling(const SystemSpec& spec) {
    spec.validate();

    DecouplingReport report;
    for (const PairCoupling& pc : spec.couplings) {
        const std::vector<double>& w = pc.omega2;
        double residual = 0.0;
        if (w.size() == 4) {
            // order [w_ik, w_ik', w_i'k, w_i'k']
            residual = std::abs(w[0] + w[3] - w[1] - w[2]);
        } else if (w.size() == 2) {
            // both bonds of the doubly occupied layer must match
            residual = std::abs(w[0] - w[1]);
        }
        report.worst_violation = std::max(report.worst_violation, residual);
        if (residual > kDecouplingTolerance)
            report.violating_pairs.emplace_back(pc.i, pc.k);
    }
    report.satisfied = report.worst_violation <= kDecouplingTolerance;
    return report;
}

double effective_intra_frequency(const SystemSpec& spec, int k) {
    spec.validate();
    if (k < 0 || k >= spec.n_layers())
        throw domain_error("effective_intra_frequency: layer index out of range");
    if (spec.layers[k].occupancy != 2)
        throw domain_error("effective_intra_frequency: layer " + std::to_string(k) +
                           " is singly occupied");

    const double mk = spec.layers[k].mass;
    double w2 = spec.omega0[k] * spec.omega0[k];
    for (int i = 0; i < spec.n_layers(); ++i) {
        if (i == k) continue;
        const double mi = spec.layers[i].mass;
        w2 += spec.layers[i].occupancy * (mi / (mi + mk)) * spec.interlayer_omega2[k][i];
    }
    return std::sqrt(w2);
}

double zero_point_shift(const SystemSpec& spec, const ShiftModel& shifts) {
    spec.validate();
    if (!shifts.enabled) return 0.0;

    const int n = spec.n_layers();
    if (static_cast<int>(shifts.e.size()) != n)
        throw domain_error("zero_point_shift: shift matrix size does not match layer count");

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(shifts.e[i].size()) != n)
            throw domain_error("zero_point_shift: shift matrix is not square");
        for (int k = i + 1; k < n; ++k) {
            const double e = shifts.e[i][k];
            if (e < 0.0)
                throw domain_error("zero_point_shift: negative binding constant at pair " +
                                   pair_label(i, k));
            if (e != shifts.e[k][i])
                throw domain_error("zero_point_shift: shift matrix is not symmetric at pair " +
                                   pair_label(i, k));
            const double w2 = spec.interlayer_omega2[i][k];
            if (w2 <= 0.0) continue;
            const int bonds = spec.layers[i].occupancy * spec.layers[k].occupancy;
            total += bonds * (e + 1.0) * std::sqrt(w2);
        }
    }
    return -0.5 * spec.dimension * total;
}

double cm_frequency(const SystemSpec& spec) {
    spec.validate();
    double mass_sum = 0.0;
    double weighted = 0.0;
    for (int k = 0; k < spec.n_layers(); ++k) {
        const double mk = spec.layer_total_mass(k);
        mass_sum += mk;
        weighted += mk * spec.omega0[k] * spec.omega0[k];
    }
    return std::sqrt(weighted / mass_sum);
}

}  // namespace layerchain

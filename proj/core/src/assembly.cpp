#include "layerchain/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>

#include "layerchain/errors.hpp"
#include "layerchain/intralayer.hpp"
#include "layerchain/modes.hpp"

namespace layerchain {

namespace {

int resolve_threads(int threads) {
    if (threads < 0)
        throw domain_error("thread count must be non-negative");
    if (threads == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw > 0 ? static_cast<int>(hw) : 1;
    }
    return std::min(threads, 64);
}

// Runs body(i) for i in [0, count).  Work is split by index stride so the
// assignment is deterministic; the lowest-index exception wins, keeping
// failure behaviour independent of the thread count.
template <typename Body>
void parallel_for(std::size_t count, int threads, const Body& body) {
    const int workers = std::min<std::size_t>(resolve_threads(threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> failures(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    body(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
}

// Ratio of the scattering length (given in layer trap-length units) to the
// relative-motion oscillator length of layer k.
double scattering_length_ratio(const SystemSpec& spec, int k, double omega_k) {
    const double mu = 0.5 * spec.layers[k].mass;
    return std::sqrt(mu * omega_k / spec.omega0[static_cast<std::size_t>(k)]);
}

// Ground level of the relative motion of doubly occupied layer k, with the
// energy converted to hbar*w0 and omega_k stamped in.
IntraLevel intra_ground_level(const SystemSpec& spec, int k) {
    const double wk = effective_intra_frequency(spec, k);
    const IntraPotential& pot = spec.layers[static_cast<std::size_t>(k)].intra;
    IntraLevel level;
    switch (pot.kind) {
        case IntraKind::none:
            level.energy = 0.5 * spec.dimension;
            level.msr = 0.5 * spec.dimension;
            break;
        case IntraKind::harmonic: {
            // Trap and bond stiffnesses add in quadrature; msr contracts by
            // the same factor relative to the bare-w_k oscillator length.
            const double ratio = std::sqrt(wk * wk + pot.strength * pot.strength) / wk;
            level.energy = 0.5 * spec.dimension * ratio;
            level.msr = 0.5 * spec.dimension / ratio;
            break;
        }
        case IntraKind::inverse_square:
            level = inverse_square_levels(pot.strength, spec.dimension, 0, 1)[0];
            break;
        case IntraKind::delta: {
            const double ratio = scattering_length_ratio(spec, k, wk);
            if (spec.dimension == 1) {
                level = delta1d_levels(pot.strength * ratio, 1)[0];
            } else if (spec.dimension == 2) {
                level = delta2d_levels(-std::log(pot.strength * ratio), 1)[0];
            } else {
                throw domain_error("delta interactions are defined in 1 and 2 dimensions only");
            }
            break;
        }
    }
    level.omega_k = wk;
    return level;
}

EnergyBudget budget_from_modes(const SystemSpec& spec, const ShiftModel& shifts,
                               const NormalModeSet& modes) {
    const double half_d = 0.5 * spec.dimension;
    EnergyBudget budget;
    budget.e_intra_per_layer.assign(static_cast<std::size_t>(spec.n_layers()), 0.0);
    for (std::size_t m = 0; m < modes.frequencies.size(); ++m) {
        if (modes.cm_index && *modes.cm_index == static_cast<int>(m))
            budget.e_cm = half_d * modes.frequencies[m];
        else
            budget.e_string += half_d * modes.frequencies[m];
    }
    for (int k = 0; k < spec.n_layers(); ++k) {
        if (spec.layers[static_cast<std::size_t>(k)].occupancy != 2) continue;
        const IntraLevel ground = intra_ground_level(spec, k);
        budget.e_intra_per_layer[static_cast<std::size_t>(k)] =
            ground.energy * ground.omega_k;
    }
    budget.v_shift = zero_point_shift(spec, shifts);
    budget.total = budget.e_string + budget.e_intra_sum() + budget.e_cm + budget.v_shift;
    return budget;
}

// Axis-value validation plus the chain it denotes.
SystemSpec chain_for_value(SweepAxis axis, double value, const SweepTemplate& templ) {
    int n = templ.n_layers;
    IntraPotential intra = templ.intra;
    switch (axis) {
        case SweepAxis::n_layers: {
            const double rounded = std::nearbyint(value);
            if (!(rounded >= 1.0) || std::abs(value - rounded) > 1e-9)
                throw domain_error("n_layers sweep values must be positive integers");
            n = static_cast<int>(rounded);
            break;
        }
        case SweepAxis::inverse_square_g:
            if (!(value >= 0.0))
                throw domain_error("inverse-square sweep strength must be >= 0");
            intra = IntraPotential::inverse_square(value);
            break;
        case SweepAxis::a1_over_b:
            if (!(value > 0.0))
                throw domain_error("a1/b sweep values must be positive");
            intra = IntraPotential::delta(value);
            break;
        case SweepAxis::ln_b_over_a2:
            intra = IntraPotential::delta(std::exp(-value));
            break;
    }
    return nearest_neighbor_chain(n, 2, templ.dimension, templ.omega12_sq, intra);
}

void check_axis_compatibility(SweepAxis axis, const SweepTemplate& templ) {
    switch (axis) {
        case SweepAxis::n_layers:
            return;
        case SweepAxis::inverse_square_g:
            if (templ.intra.kind != IntraKind::inverse_square)
                throw domain_error(
                    "inverse_square_g sweep requires an inverse_square intra template");
            return;
        case SweepAxis::a1_over_b:
            if (templ.intra.kind != IntraKind::delta || templ.dimension != 1)
                throw domain_error("a1_over_b sweep requires a delta template in 1D");
            return;
        case SweepAxis::ln_b_over_a2:
            if (templ.intra.kind != IntraKind::delta || templ.dimension != 2)
                throw domain_error("ln_b_over_a2 sweep requires a delta template in 2D");
            return;
    }
    throw domain_error("unknown sweep axis");
}

}  // namespace

double EnergyBudget::e_intra_sum() const {
    double sum = 0.0;
    for (double e : e_intra_per_layer) sum += e;
    return sum;
}

EnergyBudget total_ground_energy(const SystemSpec& spec, const ShiftModel& shifts) {
    spec.validate();
    const NormalModeSet modes = normal_modes(build_interlayer_form(spec));
    return budget_from_modes(spec, shifts, modes);
}

SeparationCurve separation_curve(int n_max, int dimension,
                                 const IntraPotential& intra, double e12,
                                 double omega12_sq, int threads) {
    if (n_max < 2)
        throw domain_error("separation_curve requires n_max >= 2");
    SeparationCurve curve;
    curve.dimension = dimension;
    curve.intra = intra;
    curve.e12 = e12;
    curve.points.resize(static_cast<std::size_t>(n_max - 1));
    parallel_for(curve.points.size(), threads, [&](std::size_t idx) {
        const int n = static_cast<int>(idx) + 2;
        const SystemSpec doubled = nearest_neighbor_chain(n, 2, dimension, omega12_sq, intra);
        const SystemSpec single =
            nearest_neighbor_chain(n, 1, dimension, omega12_sq, IntraPotential::none());
        const double e_doubled = total_ground_energy(doubled, ShiftModel::none()).total;
        const double e_single = total_ground_energy(single, ShiftModel::none()).total;
        const ShiftModel shifts = ShiftModel::nearest_neighbor(n, e12);
        const double shift_difference =
            zero_point_shift(doubled, shifts) - 2.0 * zero_point_shift(single, shifts);
        const double de = e_doubled - 2.0 * e_single;
        SeparationPoint& point = curve.points[idx];
        point.n_layers = n;
        point.de_per_layer = de / n;
        point.de_per_layer_shifted = (de + shift_difference) / n;
    });
    return curve;
}

SweepTable sweep(SweepAxis axis, const std::vector<double>& values,
                 const SweepTemplate& templ, int threads) {
    if (templ.n_layers < 1)
        throw domain_error("sweep template needs at least one layer");
    check_axis_compatibility(axis, templ);
    SweepTable table;
    table.axis = axis;
    table.fixed = templ;
    table.rows.resize(values.size());
    parallel_for(values.size(), threads, [&](std::size_t idx) {
        const double value = values[idx];
        const SystemSpec spec = chain_for_value(axis, value, templ);
        const ShiftModel shifts = templ.shift_enabled
                                      ? ShiftModel::nearest_neighbor(spec.n_layers(), templ.e12)
                                      : ShiftModel::none();
        const NormalModeSet modes = normal_modes(build_interlayer_form(spec));
        SweepRow& row = table.rows[idx];
        row.axis_value = value;
        row.budget = budget_from_modes(spec, shifts, modes);
        bool any = false;
        for (std::size_t m = 0; m < modes.frequencies.size(); ++m) {
            if (modes.cm_index && *modes.cm_index == static_cast<int>(m)) continue;
            const double w = modes.frequencies[m];
            row.mode_min = any ? std::min(row.mode_min, w) : w;
            row.mode_max = any ? std::max(row.mode_max, w) : w;
            any = true;
        }
        const IntraLevel outer = intra_ground_level(spec, 0);
        row.nu0_outer = outer.quantum_number;
        row.msr_outer = outer.msr;
        row.msr_minus_dm1 = outer.msr - (spec.dimension - 1);
    });
    return table;
}

}  // namespace layerchain

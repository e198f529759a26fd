#include "layerchain/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi.hpp"
#include "layerchain/errors.hpp"

namespace layerchain {

QuadraticForm build_interlayer_form(const SystemSpec& spec) {
    const DecouplingReport report = validate_decoupling(spec);
    if (!report.satisfied)
        throw domain_error(
            "build_interlayer_form: spec violates the decoupling condition "
            "(worst residual " + std::to_string(report.worst_violation) + ")");

    const int n = spec.n_layers();
    QuadraticForm form;
    form.masses.resize(n);
    form.stiffness.assign(n, std::vector<double>(n, 0.0));

    for (int k = 0; k < n; ++k) {
        form.masses[k] = spec.layer_total_mass(k);
        form.stiffness[k][k] = form.masses[k] * spec.omega0[k] * spec.omega0[k];
    }
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const double w2 = spec.interlayer_omega2[i][k];
            if (w2 == 0.0) continue;
            const double mi = spec.layers[i].mass;
            const double mk = spec.layers[k].mass;
            const double mu = mi * mk / (mi + mk);
            const int bonds = spec.layers[i].occupancy * spec.layers[k].occupancy;
            const double c = 0.5 * bonds * mu * w2;
            form.stiffness[i][i] += 2.0 * c;
            form.stiffness[k][k] += 2.0 * c;
            form.stiffness[i][k] -= 2.0 * c;
            form.stiffness[k][i] -= 2.0 * c;
        }
    }
    return form;
}

NormalModeSet normal_modes(const QuadraticForm& form) {
    const int n = static_cast<int>(form.masses.size());
    if (n == 0) throw domain_error("normal_modes: empty form");
    if (static_cast<int>(form.stiffness.size()) != n)
        throw domain_error("normal_modes: stiffness size does not match masses");
    for (double m : form.masses)
        if (!(m > 0.0)) throw domain_error("normal_modes: masses must be positive");

    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            a[i][k] = form.stiffness[i][k] /
                      std::sqrt(form.masses[i] * form.masses[k]);

    detail::EigenResult eig = detail::jacobi_eigen(std::move(a));

    NormalModeSet modes;
    modes.frequencies.resize(n);
    for (int m = 0; m < n; ++m) {
        double lambda = eig.values[m];
        if (lambda < -1e-10)
            throw numeric_error("normal_modes: unstable quadratic form (eigenvalue " +
                                std::to_string(lambda) + ")");
        if (lambda < 0.0) lambda = 0.0;
        modes.frequencies[m] = std::sqrt(lambda);
    }
    modes.eigenvectors = std::move(eig.vectors);

    // center-of-mass detection by overlap with the normalized sqrt(M_k) vector
    std::vector<double> uniform(n);
    double norm = 0.0;
    for (int k = 0; k < n; ++k) {
        uniform[k] = std::sqrt(form.masses[k]);
        norm += form.masses[k];
    }
    norm = std::sqrt(norm);
    for (double& u : uniform) u /= norm;
    for (int m = 0; m < n; ++m) {
        double overlap = 0.0;
        for (int k = 0; k < n; ++k) overlap += modes.eigenvectors[m][k] * uniform[k];
        if (std::abs(overlap) >= 1.0 - 1e-8) {
            modes.cm_index = m;
            break;
        }
    }
    return modes;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw numeric_error("string_spectrum: degeneracy overflow");
    return out;
}

// Number of ways to place q quanta into d Cartesian copies of one mode:
// C(q + d - 1, d - 1).
std::uint64_t mode_degeneracy(int q, int d) {
    std::uint64_t num = 1;
    for (int j = 1; j <= d - 1; ++j) {
        num = checked_mul(num, static_cast<std::uint64_t>(q + j));
        num /= static_cast<std::uint64_t>(j);
    }
    return num;
}

struct RawLevel {
    double energy;
    std::uint64_t degeneracy;
    std::vector<int> quanta;
};

constexpr std::size_t kMaxLevels = 2'000'000;

void enumerate(const std::vector<double>& omega, int dimension, int mode,
               double budget, double energy, std::uint64_t degeneracy,
               std::vector<int>& quanta, std::vector<RawLevel>& out) {
    if (mode == static_cast<int>(omega.size())) {
        if (out.size() >= kMaxLevels)
            throw domain_error("string_spectrum: energy cap enumerates too many levels");
        out.push_back({energy, degeneracy, quanta});
        return;
    }
    const double w = omega[mode];
    for (int q = 0;; ++q) {
        const double cost = q * w;
        if (cost > budget + 1e-12) break;
        quanta[mode] = q;
        enumerate(omega, dimension, mode + 1, budget - cost, energy + cost,
                  checked_mul(degeneracy, mode_degeneracy(q, dimension)),
                  quanta, out);
    }
    quanta[mode] = 0;
}

}  // namespace

std::vector<StringLevel> string_spectrum(const NormalModeSet& modes,
                                         int dimension, double energy_cap) {
    if (dimension < 1 || dimension > 3)
        throw domain_error("string_spectrum: dimension must be 1, 2, or 3");

    std::vector<double> omega;
    omega.reserve(modes.frequencies.size());
    for (int m = 0; m < static_cast<int>(modes.frequencies.size()); ++m) {
        if (modes.cm_index && *modes.cm_index == m) continue;
        omega.push_back(modes.frequencies[m]);
    }

    double zero_point = 0.0;
    for (double w : omega) zero_point += 0.5 * dimension * w;
    if (energy_cap < zero_point)
        throw domain_error("string_spectrum: energy cap below the zero-point energy");

    const double budget = energy_cap - zero_point;
    for (double w : omega)
        if (w <= 1e-12 && budget > 1e-12)
            throw domain_error("string_spectrum: zero-frequency mode cannot be enumerated");

    std::vector<RawLevel> raw;
    std::vector<int> quanta(omega.size(), 0);
    enumerate(omega, dimension, 0, budget, zero_point, 1, quanta, raw);

    std::sort(raw.begin(), raw.end(), [](const RawLevel& a, const RawLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.quanta < b.quanta;
    });

    std::vector<StringLevel> levels;
    for (RawLevel& rl : raw) {
        if (!levels.empty() && rl.energy - levels.back().energy <= 1e-9) {
            std::uint64_t sum;
            if (__builtin_add_overflow(levels.back().degeneracy, rl.degeneracy, &sum))
                throw numeric_error("string_spectrum: degeneracy overflow");
            levels.back().degeneracy = sum;
            levels.back().merged = true;
            continue;
        }
        StringLevel lv;
        lv.energy = rl.energy;
        lv.degeneracy = rl.degeneracy;
        lv.quanta = std::move(rl.quanta);
        lv.merged = false;
        levels.push_back(std::move(lv));
    }
    return levels;
}

}  // namespace layerchain

#include "layerchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "layerchain/errors.hpp"
#include "layerchain/modes.hpp"
#include "jacobi.hpp"

namespace layerchain {

namespace {

struct Bond {
    int p = 0;
    int q = 0;
    double omega2 = 0.0;
};

// One scalar coordinate per particle, layer by layer.
struct ParticleTable {
    std::vector<int> layer_of;  // coordinate -> layer
    std::vector<int> first;     // layer -> first coordinate
};

ParticleTable enumerate_particles(const SystemSpec& spec) {
    ParticleTable table;
    table.first.resize(static_cast<std::size_t>(spec.n_layers()));
    for (int k = 0; k < spec.n_layers(); ++k) {
        table.first[static_cast<std::size_t>(k)] = static_cast<int>(table.layer_of.size());
        for (int a = 0; a < spec.layers[static_cast<std::size_t>(k)].occupancy; ++a)
            table.layer_of.push_back(k);
    }
    return table;
}

// Expands the declared tuples (or the collapsed matrix where no tuple is
// declared) into per-particle bonds.  Four-entry tuples follow the particle
// order [ik, ik', i'k, i'k']; declarations with i > k are brought to i < k,
// which swaps the two middle entries.
std::vector<Bond> expand_bonds(const SystemSpec& spec, const ParticleTable& table) {
    const int n = spec.n_layers();
    std::vector<std::vector<double>> tuples(static_cast<std::size_t>(n) * n);
    for (const PairCoupling& pc : spec.couplings) {
        std::vector<double> values = pc.omega2;
        if (pc.i > pc.k && values.size() == 4) std::swap(values[1], values[2]);
        const std::size_t slot =
            static_cast<std::size_t>(std::min(pc.i, pc.k)) * n + std::max(pc.i, pc.k);
        tuples[slot] = std::move(values);
    }

    std::vector<Bond> bonds;
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            std::vector<double> values = tuples[static_cast<std::size_t>(i) * n + k];
            if (values.empty()) {
                const double w2 = spec.interlayer_omega2[static_cast<std::size_t>(i)]
                                                        [static_cast<std::size_t>(k)];
                if (w2 == 0.0) continue;
                values.assign(1, w2);
            }
            const int occ_i = spec.layers[static_cast<std::size_t>(i)].occupancy;
            const int occ_k = spec.layers[static_cast<std::size_t>(k)].occupancy;
            const int fi = table.first[static_cast<std::size_t>(i)];
            const int fk = table.first[static_cast<std::size_t>(k)];
            const int count = occ_i * occ_k;
            for (int b = 0; b < count; ++b) {
                // b enumerates (particle of i, particle of k) row-major.
                const int pi = occ_k == 2 ? b / 2 : b;
                const int pk = occ_k == 2 ? b % 2 : 0;
                double w2;
                if (values.size() == 1)
                    w2 = values[0];
                else if (static_cast<int>(values.size()) == count)
                    w2 = values[static_cast<std::size_t>(b)];
                else
                    throw domain_error("full Hessian: coupling tuple does not match occupancies");
                bonds.push_back({fi + pi, fk + pk, w2});
            }
        }
    }
    return bonds;
}

double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit_real(rng);
}

IntraPotential random_intra(std::mt19937_64& rng) {
    if (unit_real(rng) < 0.5) return IntraPotential::none();
    return IntraPotential::harmonic(uniform(rng, 0.5, 2.0));
}

// Shared body of the two generators: layers, traps, and one equal-frequency
// tuple per coupled pair, declared with a random redundancy (collapsed
// scalar or one entry per bond).
SystemSpec random_chain(std::mt19937_64& rng, bool force_two_doubles) {
    const int n = 2 + static_cast<int>(unit_real(rng) * 3.0);
    std::vector<LayerSpec> layers(static_cast<std::size_t>(n));
    std::vector<double> omega0(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        LayerSpec& layer = layers[static_cast<std::size_t>(k)];
        const bool forced = k == 0 || (force_two_doubles && k == 1);
        layer.occupancy = forced || unit_real(rng) < 0.5 ? 2 : 1;
        layer.mass = uniform(rng, 0.5, 2.0);
        if (layer.occupancy == 2) layer.intra = random_intra(rng);
        omega0[static_cast<std::size_t>(k)] = uniform(rng, 0.7, 1.5);
    }
    std::vector<PairCoupling> couplings;
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const bool forced = i == 0 && k == 1;
            if (!forced && unit_real(rng) >= 0.7) continue;
            const double w2 = uniform(rng, 1.0, 8.0);
            const int count = layers[static_cast<std::size_t>(i)].occupancy *
                              layers[static_cast<std::size_t>(k)].occupancy;
            PairCoupling pc;
            pc.i = i;
            pc.k = k;
            if (count == 1 || unit_real(rng) < 0.4)
                pc.omega2.assign(1, w2);
            else
                pc.omega2.assign(static_cast<std::size_t>(count), w2);
            couplings.push_back(std::move(pc));
        }
    }
    return make_system(1, std::move(layers), std::move(omega0), std::move(couplings));
}

struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples rows i and i+1
};

// Number of eigenvalues strictly below sigma (Sturm count via LDL^T).
int eigen_count_below(const Tridiag& t, double sigma) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < t.diag.size(); ++i) {
        const double coupling = i > 0 ? t.off[i - 1] * t.off[i - 1] / q : 0.0;
        q = t.diag[i] - sigma - coupling;
        if (q == 0.0) q = std::numeric_limits<double>::min();
        if (q < 0.0) ++count;
    }
    return count;
}

double kth_eigenvalue(const Tridiag& t, int k) {
    double lo = t.diag[0];
    double hi = t.diag[0];
    for (std::size_t i = 0; i < t.diag.size(); ++i) {
        const double radius = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                              (i + 1 < t.diag.size() ? std::abs(t.off[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
        if (eigen_count_below(t, mid) >= k + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const Tridiag& t, int count) {
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) values[static_cast<std::size_t>(k)] = kth_eigenvalue(t, k);
    return values;
}

// Inverse iteration at a shift already bisected onto the eigenvalue.
std::vector<double> eigenvector_at(const Tridiag& t, double sigma) {
    const std::size_t m = t.diag.size();
    std::vector<double> v(m, 1.0);
    std::vector<double> c(m, 0.0);
    std::vector<double> rhs(m, 0.0);
    for (int round = 0; round < 3; ++round) {
        double piv = t.diag[0] - sigma;
        if (std::abs(piv) < 1e-250) piv = 1e-250;
        c[0] = m > 1 ? t.off[0] / piv : 0.0;
        rhs[0] = v[0] / piv;
        for (std::size_t i = 1; i < m; ++i) {
            piv = t.diag[i] - sigma - t.off[i - 1] * c[i - 1];
            if (std::abs(piv) < 1e-250) piv = piv < 0.0 ? -1e-250 : 1e-250;
            c[i] = i + 1 < m ? t.off[i] / piv : 0.0;
            rhs[i] = (v[i] - t.off[i - 1] * rhs[i - 1]) / piv;
        }
        v[m - 1] = rhs[m - 1];
        for (std::size_t i = m - 1; i-- > 0;) v[i] = rhs[i] - c[i] * v[i + 1];
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, std::abs(x));
        if (peak == 0.0) throw numeric_error("inverse iteration produced a null vector");
        for (double& x : v) x /= peak;
    }
    return v;
}

Tridiag delta1d_matrix(double a1, int unknowns, double h) {
    Tridiag t;
    t.diag.resize(static_cast<std::size_t>(unknowns));
    t.off.assign(static_cast<std::size_t>(unknowns - 1), -0.5 / (h * h));
    t.diag[0] = 1.0 / (h * h) + 1.0 / (a1 * h);
    // Half-weighted origin row, symmetrized by scaling psi_0 with sqrt(2).
    t.off[0] = -std::sqrt(2.0) / (2.0 * h * h);
    for (int j = 1; j < unknowns; ++j) {
        const double x = j * h;
        t.diag[static_cast<std::size_t>(j)] = 1.0 / (h * h) + 0.5 * x * x;
    }
    return t;
}

Tridiag inverse_square_matrix(double g, int intervals, double h) {
    Tridiag t;
    t.diag.resize(static_cast<std::size_t>(intervals - 1));
    t.off.assign(static_cast<std::size_t>(intervals - 2), -0.5 / (h * h));
    for (int j = 1; j < intervals; ++j) {
        const double x = j * h;
        t.diag[static_cast<std::size_t>(j - 1)] =
            1.0 / (h * h) + 0.5 * g / (x * x) + 0.5 * x * x;
    }
    return t;
}

GridSolution combine_grids(const std::vector<double>& coarse,
                           const std::vector<double>& fine, double h,
                           double domain, double boundary_kind) {
    GridSolution solution;
    solution.grid_step = h;
    solution.domain_length = domain;
    solution.boundary_kind = boundary_kind;
    solution.lowest_energies.resize(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        solution.lowest_energies[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
        solution.richardson_error =
            std::max(solution.richardson_error, std::abs(fine[i] - coarse[i]) / 3.0);
    }
    if (solution.richardson_error > 5e-4)
        throw numeric_error("grid resolution too coarse: Richardson estimate above 5e-4");
    return solution;
}

void check_grid_arguments(int levels, int base_nodes, double domain) {
    if (levels < 1) throw domain_error("grid solver needs at least one level");
    if (base_nodes < 64 || levels > base_nodes / 8)
        throw domain_error("grid solver needs a finer base grid for that many levels");
    if (!(domain >= 10.0))
        throw domain_error("grid domain must span at least 10 oscillator lengths");
}

}  // namespace

FullHessianResult full_hessian_spectrum(const SystemSpec& spec) {
    spec.validate();
    for (const LayerSpec& layer : spec.layers)
        if (layer.occupancy == 2 && layer.intra.kind != IntraKind::none &&
            layer.intra.kind != IntraKind::harmonic)
            throw domain_error("full Hessian is defined for none/harmonic intra kinds only");
    const int coords = spec.n_particles();
    if (coords > 64)
        throw domain_error("full Hessian caps at 64 particle coordinates");

    const ParticleTable table = enumerate_particles(spec);
    std::vector<double> mass(static_cast<std::size_t>(coords));
    std::vector<std::vector<double>> stiffness(
        static_cast<std::size_t>(coords), std::vector<double>(static_cast<std::size_t>(coords), 0.0));
    for (int p = 0; p < coords; ++p) {
        const int k = table.layer_of[static_cast<std::size_t>(p)];
        mass[static_cast<std::size_t>(p)] = spec.layers[static_cast<std::size_t>(k)].mass;
        stiffness[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] =
            mass[static_cast<std::size_t>(p)] * spec.omega0[static_cast<std::size_t>(k)] *
            spec.omega0[static_cast<std::size_t>(k)];
    }

    std::vector<Bond> bonds = expand_bonds(spec, table);
    for (int k = 0; k < spec.n_layers(); ++k) {
        const LayerSpec& layer = spec.layers[static_cast<std::size_t>(k)];
        if (layer.occupancy == 2 && layer.intra.kind == IntraKind::harmonic) {
            const int p = table.first[static_cast<std::size_t>(k)];
            bonds.push_back({p, p + 1, layer.intra.strength * layer.intra.strength});
        }
    }
    for (const Bond& bond : bonds) {
        const double mi = mass[static_cast<std::size_t>(bond.p)];
        const double mk = mass[static_cast<std::size_t>(bond.q)];
        const double c = mi * mk / (mi + mk) * bond.omega2;
        stiffness[static_cast<std::size_t>(bond.p)][static_cast<std::size_t>(bond.p)] += c;
        stiffness[static_cast<std::size_t>(bond.q)][static_cast<std::size_t>(bond.q)] += c;
        stiffness[static_cast<std::size_t>(bond.p)][static_cast<std::size_t>(bond.q)] -= c;
        stiffness[static_cast<std::size_t>(bond.q)][static_cast<std::size_t>(bond.p)] -= c;
    }

    std::vector<std::vector<double>> weighted = stiffness;
    for (int p = 0; p < coords; ++p)
        for (int q = 0; q < coords; ++q)
            weighted[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] /=
                std::sqrt(mass[static_cast<std::size_t>(p)] * mass[static_cast<std::size_t>(q)]);

    FullHessianResult result;
    const detail::EigenResult eig = detail::jacobi_eigen(weighted);
    result.frequencies.resize(eig.values.size());
    for (std::size_t m = 0; m < eig.values.size(); ++m) {
        double lambda = eig.values[m];
        if (lambda < -1e-10)
            throw numeric_error("full Hessian: unstable quadratic form");
        if (lambda < 0.0) lambda = 0.0;
        result.frequencies[m] = std::sqrt(lambda);
    }

    // Rotate each doubly occupied layer to (R, r) and measure every entry
    // that couples a relative coordinate to anything else.
    const int n = spec.n_layers();
    std::vector<std::vector<double>> transform(
        static_cast<std::size_t>(coords), std::vector<double>(static_cast<std::size_t>(coords), 0.0));
    int next_relative = n;
    for (int k = 0; k < n; ++k) {
        const int p = table.first[static_cast<std::size_t>(k)];
        transform[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] = 1.0;
        if (spec.layers[static_cast<std::size_t>(k)].occupancy == 2) {
            transform[static_cast<std::size_t>(p)][static_cast<std::size_t>(next_relative)] = 0.5;
            transform[static_cast<std::size_t>(p + 1)][static_cast<std::size_t>(k)] = 1.0;
            transform[static_cast<std::size_t>(p + 1)][static_cast<std::size_t>(next_relative)] =
                -0.5;
            ++next_relative;
        }
    }
    double residual_sq = 0.0;
    for (int a = 0; a < coords; ++a) {
        for (int b = 0; b < coords; ++b) {
            if (a == b || (a < n && b < n)) continue;
            double entry = 0.0;
            for (int p = 0; p < coords; ++p) {
                if (transform[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)] == 0.0)
                    continue;
                double column = 0.0;
                for (int q = 0; q < coords; ++q)
                    column += stiffness[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] *
                              transform[static_cast<std::size_t>(q)][static_cast<std::size_t>(b)];
                entry += transform[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)] * column;
            }
            residual_sq += entry * entry;
        }
    }
    result.coupling_residual = std::sqrt(residual_sq);
    return result;
}

std::vector<double> decoupled_frequency_union(const SystemSpec& spec) {
    for (const LayerSpec& layer : spec.layers)
        if (layer.occupancy == 2 && layer.intra.kind != IntraKind::none &&
            layer.intra.kind != IntraKind::harmonic)
            throw domain_error("frequency union is defined for none/harmonic intra kinds only");
    // The union is built from the collapsed matrix; declared tuples are
    // deliberately ignored so the comparison stays meaningful for violating
    // declarations.
    SystemSpec collapsed = spec;
    collapsed.couplings.clear();
    collapsed.validate();
    const NormalModeSet modes = normal_modes(build_interlayer_form(collapsed));
    std::vector<double> frequencies = modes.frequencies;
    for (int k = 0; k < collapsed.n_layers(); ++k) {
        const LayerSpec& layer = collapsed.layers[static_cast<std::size_t>(k)];
        if (layer.occupancy != 2) continue;
        const double wk = effective_intra_frequency(collapsed, k);
        const double intra = layer.intra.kind == IntraKind::harmonic
                                 ? std::sqrt(wk * wk + layer.intra.strength * layer.intra.strength)
                                 : wk;
        frequencies.push_back(intra);
    }
    std::sort(frequencies.begin(), frequencies.end());
    return frequencies;
}

double multiset_distance(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

GridSolution grid_delta1d(double a1_over_b, int levels, int base_nodes, double domain) {
    if (!(a1_over_b > 0.0))
        throw domain_error("grid_delta1d requires a positive scattering length");
    check_grid_arguments(levels, base_nodes, domain);
    const double h = domain / base_nodes;
    const Tridiag coarse = delta1d_matrix(a1_over_b, base_nodes, h);
    const Tridiag fine = delta1d_matrix(a1_over_b, 2 * base_nodes, 0.5 * h);
    return combine_grids(lowest_eigenvalues(coarse, levels), lowest_eigenvalues(fine, levels),
                         h, domain, a1_over_b);
}

GridSolution grid_inverse_square(double g, int levels, int base_nodes, double domain) {
    if (!(g >= 0.0))
        throw domain_error("grid_inverse_square requires g >= 0");
    check_grid_arguments(levels, base_nodes, domain);
    const double h = domain / base_nodes;
    const Tridiag coarse = inverse_square_matrix(g, base_nodes, h);
    const Tridiag fine = inverse_square_matrix(g, 2 * base_nodes, 0.5 * h);
    return combine_grids(lowest_eigenvalues(coarse, levels), lowest_eigenvalues(fine, levels),
                         h, domain, 0.0);
}

double grid_ground_msr(double g, int base_nodes, double domain) {
    if (!(g >= 0.0))
        throw domain_error("grid_ground_msr requires g >= 0");
    check_grid_arguments(1, base_nodes, domain);
    double msr[2];
    for (int pass = 0; pass < 2; ++pass) {
        const int intervals = pass == 0 ? base_nodes : 2 * base_nodes;
        const double h = domain / intervals;
        const Tridiag t = inverse_square_matrix(g, intervals, h);
        const double e0 = kth_eigenvalue(t, 0);
        const std::vector<double> u = eigenvector_at(t, e0);
        double x2 = 0.0;
        double norm = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double x = (static_cast<double>(j) + 1.0) * h;
            x2 += x * x * u[j] * u[j];
            norm += u[j] * u[j];
        }
        msr[pass] = x2 / norm;
    }
    return (4.0 * msr[1] - msr[0]) / 3.0;
}

SystemSpec random_decoupled_spec(std::mt19937_64& rng) {
    return random_chain(rng, false);
}

SystemSpec random_violating_spec(std::mt19937_64& rng) {
    SystemSpec spec = random_chain(rng, true);
    for (PairCoupling& pc : spec.couplings) {
        if (pc.i != 0 || pc.k != 1) continue;
        if (pc.omega2.size() != 4)
            pc.omega2.assign(4, pc.omega2[0]);
        pc.omega2[0] += uniform(rng, 0.5, 1.5);
        // The collapsed matrix keeps the declared mean.
        double mean = 0.0;
        for (double w2 : pc.omega2) mean += w2;
        mean /= 4.0;
        spec.interlayer_omega2[0][1] = mean;
        spec.interlayer_omega2[1][0] = mean;
        return spec;
    }
    throw numeric_error("violating generator lost its forced pair");
}

}  // namespace layerchain

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "layerchain/assembly.hpp"
#include "layerchain/config.hpp"
#include "layerchain/errors.hpp"
#include "layerchain/intralayer.hpp"
#include "layerchain/model.hpp"
#include "layerchain/modes.hpp"
#include "layerchain/oracle.hpp"

namespace {

using namespace layerchain;

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    out << body;
    out.flush();
    if (!out) throw config_error("write failed: " + path);
}

std::vector<double> axis_values(double from, double to, int points, bool log_scale) {
    std::vector<double> values(static_cast<std::size_t>(points));
    if (points == 1) {
        values[0] = from;
        return values;
    }
    const double a = log_scale ? std::log(from) : from;
    const double b = log_scale ? std::log(to) : to;
    for (int i = 0; i < points; ++i) {
        const double v = a + (b - a) * i / (points - 1);
        values[static_cast<std::size_t>(i)] = log_scale ? std::exp(v) : v;
    }
    return values;
}

const char* axis_label(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::n_layers: return "n_layers";
        case SweepAxis::inverse_square_g: return "inverse_square_g";
        case SweepAxis::a1_over_b: return "a1_over_b";
        case SweepAxis::ln_b_over_a2: return "ln_b_over_a2";
    }
    return "n_layers";
}

const char* kind_label(IntraKind kind) {
    switch (kind) {
        case IntraKind::none: return "none";
        case IntraKind::inverse_square: return "inverse-square";
        case IntraKind::delta: return "delta";
        case IntraKind::harmonic: return "harmonic";
    }
    return "none";
}

// separation and sweep evaluate whole families of uniform chains, so the
// configured system must actually be one.
struct ChainTemplate {
    int n_layers = 0;
    double omega12_sq = 9.0;
    IntraPotential intra;
    double e12 = 0.0;
    bool shift_enabled = false;
};

ChainTemplate derive_template(const RunConfig& config) {
    const SystemSpec& system = config.system;
    const int n = system.n_layers();
    if (n < 2) throw config_error("separation/sweep need at least 2 layers");
    ChainTemplate t;
    t.n_layers = n;
    const IntraPotential& first = system.layers[0].intra;
    for (int k = 0; k < n; ++k) {
        const LayerSpec& layer = system.layers[static_cast<std::size_t>(k)];
        if (layer.occupancy != 2 || layer.mass != 1.0 ||
            system.omega0[static_cast<std::size_t>(k)] != 1.0)
            throw config_error(
                "separation/sweep require a uniform chain: occupancy 2, unit masses and traps");
        if (layer.intra.kind != first.kind || layer.intra.strength != first.strength)
            throw config_error(
                "separation/sweep require the same intra potential on every layer");
    }
    t.intra = first;
    t.omega12_sq = system.interlayer_omega2[0][1];
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            const double expected = k == i + 1 ? t.omega12_sq : 0.0;
            if (system.interlayer_omega2[static_cast<std::size_t>(i)]
                                        [static_cast<std::size_t>(k)] != expected)
                throw config_error(
                    "separation/sweep require uniform nearest-neighbor coupling");
        }
    if (config.shift.enabled) {
        t.shift_enabled = true;
        t.e12 = config.shift.e[0][1];
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) {
                const double expected = k == i + 1 ? t.e12 : 0.0;
                if (config.shift.e[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(k)] != expected)
                    throw config_error("separation/sweep support only a uniform e12 shift");
            }
    }
    return t;
}

void run_check(const std::string& config_path, const std::string& out_path) {
    const RunConfig config = parse_config_file(config_path);
    const DecouplingReport report = validate_decoupling(config.system);
    std::ostringstream out;
    out << "layers = " << config.system.n_layers() << "\n";
    out << "dimension = " << config.system.dimension << "\n";
    out << "particles = " << config.system.n_particles() << "\n";
    out << "decoupling = " << (report.satisfied ? "satisfied" : "violated") << "\n";
    out << "worst_violation_w0sq = " << sci(report.worst_violation) << "\n";
    if (report.satisfied) {
        const EnergyBudget budget = total_ground_energy(config.system, config.shift);
        out << "ground_energy_hw0 = " << sci(budget.total) << "\n";
    } else {
        out << "violating_pairs =";
        for (const auto& [i, k] : report.violating_pairs) out << " " << i << "-" << k;
        out << "\n";
    }
    std::cout << out.str();
    if (!out_path.empty()) write_text(out_path, out.str());
    if (!report.satisfied)
        throw domain_error("decoupling conditions violated: worst residual " +
                           sci(report.worst_violation) + " w0^2");
}

void run_modes(const std::string& config_path, const std::string& out_path) {
    const RunConfig config = parse_config_file(config_path);
    const NormalModeSet modes = normal_modes(build_interlayer_form(config.system));
    std::ostringstream out;
    out << "mode_index,frequency_w0,is_cm\n";
    for (std::size_t m = 0; m < modes.frequencies.size(); ++m) {
        const bool is_cm = modes.cm_index && *modes.cm_index == static_cast<int>(m);
        out << m << "," << sci(modes.frequencies[m]) << "," << (is_cm ? 1 : 0) << "\n";
    }
    write_text(out_path, out.str());
}

void run_spectrum(const std::string& config_path, const std::string& out_path) {
    const RunConfig config = parse_config_file(config_path);
    if (!config.spectrum_cap)
        throw config_error("spectrum subcommand needs a [spectrum] section");
    const NormalModeSet modes = normal_modes(build_interlayer_form(config.system));
    const std::vector<StringLevel> levels =
        string_spectrum(modes, config.system.dimension, *config.spectrum_cap);
    std::ostringstream out;
    out << "level_index,energy_hw0,degeneracy,merged,quanta\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out << i << "," << sci(levels[i].energy) << "," << levels[i].degeneracy << ","
            << (levels[i].merged ? 1 : 0) << ",";
        for (std::size_t q = 0; q < levels[i].quanta.size(); ++q)
            out << (q ? ";" : "") << levels[i].quanta[q];
        out << "\n";
    }
    write_text(out_path, out.str());
}

void run_intra(const std::string& config_path, const std::string& out_path) {
    const RunConfig config = parse_config_file(config_path);
    if (!config.intra_scan)
        throw config_error("intra subcommand needs an [intra_scan] section");
    const IntraScanParams& scan = *config.intra_scan;
    const int d = config.system.dimension;
    std::ostringstream out;
    out << "strength,kind,quantum_number,l_eff,energy_hwk,msr_b2,msr_minus_Dminus1\n";
    for (double s : axis_values(scan.from, scan.to, scan.points, scan.log_scale)) {
        std::vector<IntraLevel> levels;
        if (scan.kind == IntraKind::inverse_square)
            levels = inverse_square_levels(s, d, 0, scan.levels);
        else
            levels = d == 1 ? delta1d_levels(s, scan.levels) : delta2d_levels(s, scan.levels);
        if (static_cast<int>(levels.size()) > scan.levels)
            levels.resize(static_cast<std::size_t>(scan.levels));
        for (const IntraLevel& level : levels)
            out << sci(s) << "," << kind_label(scan.kind) << "," << sci(level.quantum_number)
                << "," << sci(level.l_eff) << "," << sci(level.energy) << "," << sci(level.msr)
                << "," << sci(level.msr - (d - 1)) << "\n";
    }
    write_text(out_path, out.str());
}

void run_separation(const std::string& config_path, const std::string& out_path, int threads) {
    const RunConfig config = parse_config_file(config_path);
    if (!config.separation)
        throw config_error("separation subcommand needs a [separation] section");
    const ChainTemplate t = derive_template(config);
    std::vector<double> strengths = config.separation->strengths;
    if (strengths.empty())
        strengths.push_back(t.intra.kind == IntraKind::none ? 0.0 : t.intra.strength);
    std::ostringstream out;
    out << "strength,n_layers,de_per_layer_hw0,de_per_layer_shifted_hw0\n";
    for (double s : strengths) {
        const IntraPotential intra =
            t.intra.kind == IntraKind::none ? IntraPotential::none()
                                            : IntraPotential{t.intra.kind, s};
        const SeparationCurve curve =
            separation_curve(config.separation->n_max, config.system.dimension, intra, t.e12,
                             t.omega12_sq, threads);
        for (const SeparationPoint& p : curve.points)
            out << sci(s) << "," << p.n_layers << "," << sci(p.de_per_layer) << ","
                << sci(p.de_per_layer_shifted) << "\n";
    }
    write_text(out_path, out.str());
}

void run_sweep(const std::string& config_path, const std::string& out_path, int threads) {
    const RunConfig config = parse_config_file(config_path);
    if (!config.sweep) throw config_error("sweep subcommand needs a [sweep] section");
    const SweepParams& params = *config.sweep;
    const ChainTemplate t = derive_template(config);
    const int d = config.system.dimension;
    if (params.axis == SweepAxis::inverse_square_g && t.intra.kind != IntraKind::inverse_square)
        throw config_error("sweep axis inverse_square_g needs inverse-square intra on the layers");
    if (params.axis == SweepAxis::a1_over_b && (t.intra.kind != IntraKind::delta || d != 1))
        throw config_error("sweep axis a1_over_b needs delta intra in 1 dimension");
    if (params.axis == SweepAxis::ln_b_over_a2 && (t.intra.kind != IntraKind::delta || d != 2))
        throw config_error("sweep axis ln_b_over_a2 needs delta intra in 2 dimensions");
    SweepTemplate templ;
    templ.n_layers = t.n_layers;
    templ.dimension = d;
    templ.omega12_sq = t.omega12_sq;
    templ.intra = t.intra;
    templ.e12 = t.e12;
    templ.shift_enabled = t.shift_enabled;
    const SweepTable table =
        sweep(params.axis, axis_values(params.from, params.to, params.points, params.log_scale),
              templ, threads);
    std::ostringstream out;
    out << "axis,value,e_string,e_cm,e_intra,v_shift,total,mode_min,mode_max,"
           "nu0_outer,msr_outer,msr_minus_Dminus1\n";
    for (const SweepRow& row : table.rows)
        out << axis_label(table.axis) << "," << sci(row.axis_value) << ","
            << sci(row.budget.e_string) << "," << sci(row.budget.e_cm) << ","
            << sci(row.budget.e_intra_sum()) << "," << sci(row.budget.v_shift) << ","
            << sci(row.budget.total) << "," << sci(row.mode_min) << "," << sci(row.mode_max)
            << "," << sci(row.nu0_outer) << "," << sci(row.msr_outer) << ","
            << sci(row.msr_minus_dm1) << "\n";
    write_text(out_path, out.str());
}

void run_verify(std::uint64_t seed, const std::string& out_path) {
    std::ostringstream out;
    bool all_pass = true;
    char line[200];
    const auto emit = [&](bool pass) {
        all_pass = all_pass && pass;
        out << (pass ? "[PASS] " : "[FAIL] ") << line << "\n";
    };

    {
        std::mt19937_64 rng(seed);
        double worst_dist = 0.0;
        double worst_resid = 0.0;
        for (int t = 0; t < 200; ++t) {
            const SystemSpec spec = random_decoupled_spec(rng);
            const FullHessianResult full = full_hessian_spectrum(spec);
            worst_dist = std::max(
                worst_dist, multiset_distance(full.frequencies, decoupled_frequency_union(spec)));
            worst_resid = std::max(worst_resid, full.coupling_residual);
        }
        std::snprintf(line, sizeof(line),
                      "decoupling-random: 200 specs, worst distance %.2e, worst residual %.2e "
                      "(tol 1e-8)",
                      worst_dist, worst_resid);
        emit(worst_dist < 1e-8 && worst_resid < 1e-8);
    }
    {
        std::mt19937_64 rng(seed + 1);
        double min_resid = std::numeric_limits<double>::infinity();
        double min_dist = std::numeric_limits<double>::infinity();
        for (int t = 0; t < 50; ++t) {
            const SystemSpec spec = random_violating_spec(rng);
            const FullHessianResult full = full_hessian_spectrum(spec);
            min_resid = std::min(min_resid, full.coupling_residual);
            min_dist = std::min(
                min_dist, multiset_distance(full.frequencies, decoupled_frequency_union(spec)));
        }
        std::snprintf(line, sizeof(line),
                      "decoupling-converse: 50 violating specs, min residual %.2e, min distance "
                      "%.2e",
                      min_resid, min_dist);
        emit(min_resid > 1e-10 && min_dist > 1e-8);
    }
    {
        double worst = 0.0;
        for (double a1 : {0.1, 0.5, 1.0, 2.0, 10.0}) {
            const GridSolution grid = grid_delta1d(a1, 2);
            std::vector<double> roots;
            for (const IntraLevel& level : delta1d_levels(a1, 2))
                if (level.kind == IntraLevelKind::delta1d_even) roots.push_back(level.energy);
            for (std::size_t j = 0; j < 2; ++j)
                worst = std::max(worst, std::abs(roots[j] - grid.lowest_energies[j]));
        }
        std::snprintf(line, sizeof(line),
                      "delta1d-grid: 5 scattering lengths x 2 even levels, worst |dE| = %.2e "
                      "(tol 1e-4)",
                      worst);
        emit(worst < 1e-4);
    }
    {
        double worst = 0.0;
        double worst_msr = 0.0;
        for (double g : {0.5, 2.0}) {
            const GridSolution grid = grid_inverse_square(g, 2);
            const std::vector<IntraLevel> levels = inverse_square_levels(g, 1, 0, 2);
            for (std::size_t j = 0; j < 2; ++j)
                worst = std::max(worst, std::abs(levels[j].energy - grid.lowest_energies[j]));
            worst_msr = std::max(worst_msr, std::abs(grid_ground_msr(g) - levels[0].msr));
        }
        std::snprintf(line, sizeof(line),
                      "inverse-square-grid: g in {0.5, 2}, worst |dE| = %.2e (tol 1e-4), worst "
                      "|d<x^2>| = %.2e (tol 1e-3)",
                      worst, worst_msr);
        emit(worst < 1e-4 && worst_msr < 1e-3);
    }
    {
        double worst_1d = 0.0;
        for (double q : axis_values(0.1, 10.0, 20, true)) {
            const IntraLevel level = delta1d_levels(q, 1)[0];
            const MsrRoutes routes = delta_msr_routes(level, q);
            worst_1d = std::max(worst_1d, std::abs(routes.quadrature - routes.hellmann_feynman));
        }
        double worst_2d = 0.0;
        for (double l : axis_values(-2.0, 2.0, 20, false)) {
            const IntraLevel level = delta2d_levels(l, 1)[0];
            const MsrRoutes routes = delta_msr_routes(level, l);
            worst_2d = std::max(worst_2d, std::abs(routes.quadrature - routes.hellmann_feynman));
        }
        std::snprintf(line, sizeof(line),
                      "msr-dual-route: 20 strengths x {1D, 2D}, worst |quad - HF| = %.2e / %.2e "
                      "(tol 1e-4)",
                      worst_1d, worst_2d);
        emit(worst_1d < 1e-4 && worst_2d < 1e-4);
    }

    out << (all_pass ? "verify: all checks passed\n" : "verify: FAILED\n");
    std::cout << out.str();
    if (!out_path.empty()) write_text(out_path, out.str());
    if (!all_pass) throw domain_error("verification failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"layered harmonic-chain spectra, separation energies and self checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 2024;
    int threads = 0;

    CLI::App* check = app.add_subcommand("check", "validate a spec file and report decoupling");
    CLI::App* modes = app.add_subcommand("modes", "interlayer normal-mode frequencies");
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "string excitation spectrum with degeneracies");
    CLI::App* intra = app.add_subcommand("intra", "two-body intra-layer level scan");
    CLI::App* separation =
        app.add_subcommand("separation", "double-vs-single chain separation energies");
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "one-axis parameter sweep of the ground-state budget");
    CLI::App* verify = app.add_subcommand("verify", "run the seeded self-check suites");

    for (CLI::App* cmd : {check, modes, spectrum, intra, separation, sweep_cmd})
        cmd->add_option("--config", config_path, "spec file")->required();
    check->add_option("--out", out_path, "also write the report to this file");
    for (CLI::App* cmd : {modes, spectrum, intra, separation, sweep_cmd})
        cmd->add_option("--out", out_path, "output CSV path")->required();
    for (CLI::App* cmd : {separation, sweep_cmd})
        cmd->add_option("--threads", threads, "worker threads (0 = hardware count)");
    verify->add_option("--seed", seed, "seed for the random-spec suites");
    verify->add_option("--out", out_path, "also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) run_check(config_path, out_path);
        else if (modes->parsed()) run_modes(config_path, out_path);
        else if (spectrum->parsed()) run_spectrum(config_path, out_path);
        else if (intra->parsed()) run_intra(config_path, out_path);
        else if (separation->parsed()) run_separation(config_path, out_path, threads);
        else if (sweep_cmd->parsed()) run_sweep(config_path, out_path, threads);
        else if (verify->parsed()) run_verify(seed, out_path);
    } catch (const config_error& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 4;
    } catch (const error& e) {
        std::cerr << "error: physics: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

#include "doctest.h"

#include <cmath>
#include <vector>

#include "layerchain/assembly.hpp"
#include "layerchain/errors.hpp"
#include "layerchain/intralayer.hpp"
#include "layerchain/model.hpp"
#include "layerchain/modes.hpp"

using namespace layerchain;

TEST_SUITE_BEGIN("assembly");

TEST_CASE("two-layer budget decomposes into known closed forms") {
    const EnergyBudget b =
        total_ground_energy(nearest_neighbor_chain(2, 2, 1, 9.0), ShiftModel::none());
    CHECK(b.e_string == doctest::Approx(0.5 * std::sqrt(19.0)).epsilon(1e-13));
    CHECK(b.e_cm == doctest::Approx(0.5).epsilon(1e-13));
    REQUIRE(b.e_intra_per_layer.size() == 2);
    CHECK(b.e_intra_per_layer[0] == doctest::Approx(0.5 * std::sqrt(10.0)).epsilon(1e-13));
    CHECK(b.e_intra_per_layer[1] == doctest::Approx(0.5 * std::sqrt(10.0)).epsilon(1e-13));
    CHECK(b.v_shift == 0.0);
    CHECK(b.total == doctest::Approx(5.841727131938717).epsilon(1e-13));
}

TEST_CASE("an isolated layer is a bare oscillator pair") {
    const EnergyBudget b =
        total_ground_energy(nearest_neighbor_chain(1, 2, 1, 9.0), ShiftModel::none());
    CHECK(b.e_string == 0.0);
    CHECK(b.e_cm == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.e_intra_sum() == doctest::Approx(0.5).epsilon(1e-14));

    const EnergyBudget single =
        total_ground_energy(nearest_neighbor_chain(1, 1, 3, 9.0), ShiftModel::none());
    CHECK(single.total == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(single.e_intra_sum() == 0.0);
}

TEST_CASE("budget closes exactly against its own fields") {
    const SystemSpec specs[] = {
        nearest_neighbor_chain(5, 2, 1, 9.0, IntraPotential::inverse_square(2.0)),
        nearest_neighbor_chain(4, 2, 2, 9.0, IntraPotential::delta(0.7)),
        nearest_neighbor_chain(3, 2, 3, 4.0, IntraPotential::harmonic(1.3)),
        uniform_coupling(6, 1, 2, 2.0),
    };
    for (const SystemSpec& s : specs) {
        const ShiftModel shifts = ShiftModel::nearest_neighbor(s.n_layers(), 2.0);
        const EnergyBudget b = total_ground_energy(s, shifts);
        const double rebuilt = b.e_string + b.e_intra_sum() + b.e_cm + b.v_shift;
        CHECK(std::fabs(b.total - rebuilt) <= 1e-12 * std::max(1.0, std::fabs(b.total)));
    }
}

TEST_CASE("harmonic intra terms reproduce the quadrature closed form") {
    // relative frequency sqrt(w_k^2 + Omega^2): N=1, Omega=1.3 -> E = (1+sqrt(1+1.69))/2
    SystemSpec s = nearest_neighbor_chain(1, 2, 1, 0.0, IntraPotential::harmonic(1.3));
    const EnergyBudget b = total_ground_energy(s, ShiftModel::none());
    CHECK(b.total == doctest::Approx(0.5 + 0.5 * std::sqrt(1.0 + 1.69)).epsilon(1e-13));
}

TEST_CASE("global frequency scaling multiplies every budget entry") {
    // All declared frequencies scale by lambda (squared entries by lambda^2);
    // dimensionless strengths stay put.  Every energy must follow linearly.
    for (double lambda : {0.5, 2.0, 7.0}) {
        for (int variant = 0; variant < 3; ++variant) {
            const IntraPotential intra =
                variant == 0   ? IntraPotential::inverse_square(2.0)
                : variant == 1 ? IntraPotential::delta(0.8)
                               : IntraPotential::harmonic(1.1);
            const IntraPotential intra_scaled =
                variant == 2 ? IntraPotential::harmonic(1.1 * lambda) : intra;
            const int dim = variant == 1 ? 2 : 1;
            const SystemSpec base = nearest_neighbor_chain(5, 2, dim, 9.0, intra);
            const SystemSpec scaled = nearest_neighbor_chain(
                5, 2, dim, 9.0 * lambda * lambda, intra_scaled, lambda);
            const ShiftModel shifts = ShiftModel::nearest_neighbor(5, 2.0);
            const EnergyBudget b0 = total_ground_energy(base, shifts);
            const EnergyBudget b1 = total_ground_energy(scaled, shifts);
            CHECK(b1.total == doctest::Approx(lambda * b0.total).epsilon(1e-10));
            CHECK(b1.e_string == doctest::Approx(lambda * b0.e_string).epsilon(1e-10));
            CHECK(b1.e_cm == doctest::Approx(lambda * b0.e_cm).epsilon(1e-10));
            CHECK(b1.v_shift == doctest::Approx(lambda * b0.v_shift).epsilon(1e-10));
            for (int k = 0; k < 5; ++k)
                CHECK(b1.e_intra_per_layer[k] ==
                      doctest::Approx(lambda * b0.e_intra_per_layer[k]).epsilon(1e-10));
        }
    }
}

TEST_CASE("separation cost per layer grows monotonically with chain length") {
    for (int variant = 0; variant < 2; ++variant) {
        const IntraPotential intra =
            variant == 0 ? IntraPotential::inverse_square(1.0) : IntraPotential::none();
        const SeparationCurve c = separation_curve(20, 1, intra, 0.0, 9.0, 0);
        REQUIRE(c.points.size() == 19);
        for (std::size_t i = 1; i < c.points.size(); ++i)
            CHECK(c.points[i].de_per_layer >= c.points[i - 1].de_per_layer - 1e-12);
        CHECK(c.points[0].n_layers == 2);
        CHECK(c.points.back().n_layers == 20);
    }
}

TEST_CASE("separation results do not depend on the thread count") {
    const SeparationCurve a = separation_curve(14, 2, IntraPotential::inverse_square(2.0),
                                               2.0, 9.0, 1);
    const SeparationCurve b = separation_curve(14, 2, IntraPotential::inverse_square(2.0),
                                               2.0, 9.0, 4);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].de_per_layer == b.points[i].de_per_layer);
        CHECK(a.points[i].de_per_layer_shifted == b.points[i].de_per_layer_shifted);
    }
    CHECK_THROWS_AS(separation_curve(1, 1, IntraPotential::none()), domain_error);
}

TEST_CASE("sweep rows are thread-invariant and in input order") {
    SweepTemplate templ;
    templ.intra = IntraPotential::inverse_square(1.0);
    templ.n_layers = 12;
    const std::vector<double> gs = {0.0, 3.0, 1.0, 2.0};
    const SweepTable a = sweep(SweepAxis::inverse_square_g, gs, templ, 1);
    const SweepTable b = sweep(SweepAxis::inverse_square_g, gs, templ, 4);
    REQUIRE(a.rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a.rows[i].axis_value == gs[i]);
        CHECK(a.rows[i].budget.total == b.rows[i].budget.total);
        CHECK(a.rows[i].nu0_outer == b.rows[i].nu0_outer);
    }
}

TEST_CASE("sweep checks axis against template kind and value domain") {
    SweepTemplate harmonic;
    harmonic.intra = IntraPotential::harmonic(1.0);
    CHECK_THROWS_AS(sweep(SweepAxis::inverse_square_g, {1.0}, harmonic), domain_error);

    SweepTemplate delta1d;
    delta1d.intra = IntraPotential::delta(1.0);
    delta1d.dimension = 1;
    CHECK_THROWS_AS(sweep(SweepAxis::ln_b_over_a2, {0.0}, delta1d), domain_error);
    CHECK_THROWS_AS(sweep(SweepAxis::a1_over_b, {-1.0}, delta1d), domain_error);

    // the layer-count axis demands integer values
    SweepTemplate none;
    CHECK_THROWS_AS(sweep(SweepAxis::n_layers, {2.5}, none), domain_error);
    const SweepTable t = sweep(SweepAxis::n_layers, {2.0, 4.0}, none);
    CHECK(t.rows[0].budget.e_intra_sum() > 0.0);
    CHECK(t.rows[1].budget.total > t.rows[0].budget.total);
}

TEST_CASE("sweep mode extrema match a direct diagonalization") {
    SweepTemplate templ;
    templ.intra = IntraPotential::inverse_square(2.0);
    templ.n_layers = 10;
    const SweepTable t = sweep(SweepAxis::inverse_square_g, {2.0}, templ);
    REQUIRE(t.rows.size() == 1);
    const NormalModeSet modes = normal_modes(build_interlayer_form(
        nearest_neighbor_chain(10, 2, 1, 9.0, IntraPotential::inverse_square(2.0))));
    double lo = 1e300, hi = 0.0;
    for (std::size_t m = 0; m < modes.frequencies.size(); ++m) {
        if (static_cast<int>(m) == *modes.cm_index) continue;
        lo = std::min(lo, modes.frequencies[m]);
        hi = std::max(hi, modes.frequencies[m]);
    }
    CHECK(t.rows[0].mode_min == doctest::Approx(lo).epsilon(1e-13));
    CHECK(t.rows[0].mode_max == doctest::Approx(hi).epsilon(1e-13));
    // outer-layer observables for inverse-square: msr equals the energy and
    // nu0 is the integer ground index
    CHECK(t.rows[0].nu0_outer == 0.0);
    CHECK(t.rows[0].msr_minus_dm1 == doctest::Approx(t.rows[0].msr_outer).epsilon(1e-15));
}

TEST_CASE("every 2D intra excitation clears the interlayer band") {
    // The lowest even excitation 2(nu1 - nu0) stays near or above 2 for every
    // contact strength, so scaled by the softest layer frequency sqrt(10) it
    // exceeds the top of the omega12_sq = 9 interlayer band for any N.
    const NormalModeSet modes =
        normal_modes(build_interlayer_form(nearest_neighbor_chain(100, 2, 2, 9.0)));
    const double band_top = modes.frequencies.back();
    CHECK(band_top < std::sqrt(37.0));
    for (double L = -20.0; L <= 20.0; L += 0.5) {
        const auto lv = delta2d_levels(L, 2);
        const double gap = lv[1].energy - lv[0].energy;
        CHECK(gap * std::sqrt(10.0) > band_top);
    }
}

TEST_SUITE_END();

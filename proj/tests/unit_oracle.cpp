#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "layerchain/errors.hpp"
#include "layerchain/model.hpp"
#include "layerchain/oracle.hpp"

using namespace layerchain;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("brute force confirms the reduction on condition-satisfying chains") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const SystemSpec spec = random_decoupled_spec(rng);
        const FullHessianResult full = full_hessian_spectrum(spec);
        CHECK(full.coupling_residual < 1e-8);
        CHECK(multiset_distance(full.frequencies, decoupled_frequency_union(spec)) < 1e-8);
    }
}

TEST_CASE("knocked-off tuples leave a visible residual and shifted spectrum") {
    std::mt19937_64 rng(100);
    for (int trial = 0; trial < 30; ++trial) {
        const SystemSpec spec = random_violating_spec(rng);
        const FullHessianResult full = full_hessian_spectrum(spec);
        CHECK(full.coupling_residual > 1e-10);
        CHECK(multiset_distance(full.frequencies, decoupled_frequency_union(spec)) > 1e-8);
    }
}

TEST_CASE("random spec generation is reproducible from the seed") {
    std::mt19937_64 a(12345), b(12345);
    const SystemSpec s1 = random_decoupled_spec(a);
    const SystemSpec s2 = random_decoupled_spec(b);
    REQUIRE(s1.n_layers() == s2.n_layers());
    for (int i = 0; i < s1.n_layers(); ++i) {
        CHECK(s1.layers[i].mass == s2.layers[i].mass);
        CHECK(s1.omega0[i] == s2.omega0[i]);
        for (int k = 0; k < s1.n_layers(); ++k)
            CHECK(s1.interlayer_omega2[i][k] == s2.interlayer_omega2[i][k]);
    }
}

TEST_CASE("a pairwise-balanced tuple can still couple the sectors") {
    // [1, 4, 1, 4] passes the scalar compatibility check (1+4 = 4+1) yet its
    // two sub-bonds differ, so the full problem is not the decoupled union.
    const SystemSpec spec = make_system(1, {LayerSpec{}, LayerSpec{}}, {1.0, 1.0},
                                        {PairCoupling{0, 1, {1.0, 4.0, 1.0, 4.0}}});
    CHECK(validate_decoupling(spec).satisfied);
    const FullHessianResult full = full_hessian_spectrum(spec);
    CHECK(full.coupling_residual == doctest::Approx(3.0).epsilon(1e-12));
    const double dist = multiset_distance(full.frequencies, decoupled_frequency_union(spec));
    CHECK(dist > 0.1);
}

TEST_CASE("union and brute force agree exactly on a two-layer chain") {
    const SystemSpec spec = nearest_neighbor_chain(2, 2, 1, 9.0);
    const FullHessianResult full = full_hessian_spectrum(spec);
    REQUIRE(full.frequencies.size() == 4);
    const double expected[] = {1.0, std::sqrt(10.0), std::sqrt(10.0), std::sqrt(19.0)};
    for (int i = 0; i < 4; ++i)
        CHECK(full.frequencies[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(full.coupling_residual == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("harmonic intra terms shift only the relative branch") {
    const SystemSpec spec =
        nearest_neighbor_chain(1, 2, 1, 0.0, IntraPotential::harmonic(2.0));
    const FullHessianResult full = full_hessian_spectrum(spec);
    REQUIRE(full.frequencies.size() == 2);
    CHECK(full.frequencies[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(full.frequencies[1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("brute force rejects what it cannot represent") {
    CHECK_THROWS_AS(full_hessian_spectrum(nearest_neighbor_chain(33, 2, 1, 9.0)),
                    domain_error);
    CHECK_THROWS_AS(
        full_hessian_spectrum(nearest_neighbor_chain(2, 2, 1, 9.0, IntraPotential::delta(1.0))),
        domain_error);
}

TEST_CASE("multiset distance compares sorted sequences") {
    CHECK(multiset_distance({1.0, 2.0}, {2.0, 1.0}) == 0.0);
    CHECK(multiset_distance({1.0, 2.0}, {1.0, 2.5}) == doctest::Approx(0.5));
    CHECK(std::isinf(multiset_distance({1.0}, {1.0, 2.0})));
}

TEST_CASE("contact grid reproduces the transcendental even levels") {
    const GridSolution sol = grid_delta1d(1.0, 2);
    REQUIRE(sol.lowest_energies.size() == 2);
    CHECK(sol.lowest_energies[0] == doctest::Approx(2.0 * 0.1963720226544763 + 0.5).epsilon(1e-7));
    CHECK(sol.lowest_energies[1] == doctest::Approx(2.0 * 1.127320766639683 + 0.5).epsilon(1e-7));
    CHECK(sol.richardson_error < 5e-4);
    CHECK(sol.boundary_kind == 1.0);
}

TEST_CASE("contact grid approaches the free and fermionized towers") {
    const GridSolution free_limit = grid_delta1d(1e8, 3);
    const GridSolution hard_limit = grid_delta1d(1e-6, 3);
    for (int n = 0; n < 3; ++n) {
        CHECK(std::fabs(free_limit.lowest_energies[n] - (0.5 + 2.0 * n)) < 1e-4);
        CHECK(std::fabs(hard_limit.lowest_energies[n] - (1.5 + 2.0 * n)) < 1e-3);
    }
}

TEST_CASE("barrier grid reproduces the closed-form levels to 1e-6") {
    for (double g : {0.5, 2.0}) {
        const double l_eff = std::sqrt(g + 0.25) - 0.5;
        const GridSolution sol = grid_inverse_square(g, 2);
        REQUIRE(sol.lowest_energies.size() == 2);
        CHECK(std::fabs(sol.lowest_energies[0] - (l_eff + 1.5)) < 1e-6);
        CHECK(std::fabs(sol.lowest_energies[1] - (l_eff + 3.5)) < 1e-6);
        CHECK(grid_ground_msr(g) == doctest::Approx(l_eff + 1.5).epsilon(1e-4));
    }
}

TEST_CASE("grid error shrinks at second order when the step halves") {
    // Richardson gap |E(h) - E(h/2)| scales as h^2 on smooth exact-limit cases.
    const double delta_ratio = grid_delta1d(1e8, 1, 1000).richardson_error /
                               grid_delta1d(1e8, 1, 2000).richardson_error;
    CHECK(delta_ratio > 3.5);
    CHECK(delta_ratio < 4.5);

    const double barrier_ratio = grid_inverse_square(2.0, 1, 1000).richardson_error /
                                 grid_inverse_square(2.0, 1, 2000).richardson_error;
    CHECK(barrier_ratio > 3.5);
    CHECK(barrier_ratio < 4.5);
}

TEST_CASE("coarse grids refuse to report") {
    CHECK_THROWS_AS(grid_delta1d(1.0, 2, 64), numeric_error);
    CHECK_THROWS_AS(grid_delta1d(1.0, 0), domain_error);
    CHECK_THROWS_AS(grid_delta1d(1.0, 2, 4000, 5.0), domain_error);
    CHECK_THROWS_AS(grid_inverse_square(2.0, 600, 4000), domain_error);
}

TEST_SUITE_END();

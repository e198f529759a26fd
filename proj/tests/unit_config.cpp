#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "layerchain/config.hpp"
#include "layerchain/errors.hpp"

using namespace layerchain;

namespace {

RunConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string error_text(const std::string& text) {
    try {
        parse_text(text);
    } catch (const config_error& e) {
        return e.what();
    }
    return "";
}

const char* kMinimalPreset = "preset = paper-default\nlayers = 2\n";

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("the preset expands to the default two-layer chain") {
    const RunConfig c = parse_text(kMinimalPreset);
    CHECK(c.system.dimension == 1);
    REQUIRE(c.system.n_layers() == 2);
    CHECK(c.system.layers[0].occupancy == 2);
    CHECK(c.system.layers[0].mass == 1.0);
    CHECK(c.system.layers[0].intra.kind == IntraKind::none);
    CHECK(c.system.omega0[0] == 1.0);
    CHECK(c.system.interlayer_omega2[0][1] == 9.0);
    CHECK_FALSE(c.shift.enabled);
    CHECK_FALSE(c.sweep.has_value());
    CHECK_FALSE(c.separation.has_value());
}

TEST_CASE("explicit pair declarations keep their tuples") {
    const RunConfig c = parse_text(
        "dimension = 2\n"
        "layers = 2\n"
        "omega0_units = w0\n"
        "intra = inverse-square\n"
        "strength = 1.5\n"
        "\n"
        "[coupling]\n"
        "units = w0sq\n"
        "pattern = explicit\n"
        "pair.0.1 = 1 4 4 1\n");
    REQUIRE(c.system.couplings.size() == 1);
    REQUIRE(c.system.couplings[0].omega2.size() == 4);
    CHECK(c.system.interlayer_omega2[0][1] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(c.system.layers[1].intra.kind == IntraKind::inverse_square);
    CHECK(c.system.layers[1].intra.strength == 1.5);
}

TEST_CASE("per-layer sections override the top-level defaults") {
    const RunConfig c = parse_text(
        "dimension = 1\n"
        "layers = 3\n"
        "omega0_units = w0\n"
        "occupancy = 2\n"
        "mass = 1.25\n"
        "intra = delta\n"
        "strength = 0.8\n"
        "\n"
        "[layer.1]\n"
        "occupancy = 1\n"
        "mass = 2.5\n"
        "\n"
        "[layer.2]\n"
        "omega0 = 1.4\n"
        "\n"
        "[coupling]\n"
        "units = w0sq\n"
        "pattern = nearest-neighbor\n"
        "omega12_sq = 4\n");
    CHECK(c.system.layers[0].mass == 1.25);
    CHECK(c.system.layers[1].occupancy == 1);
    CHECK(c.system.layers[1].mass == 2.5);
    CHECK(c.system.layers[1].intra.kind == IntraKind::none);
    CHECK(c.system.layers[2].intra.kind == IntraKind::delta);
    CHECK(c.system.omega0[2] == 1.4);
    CHECK(c.system.interlayer_omega2[1][2] == 4.0);
}

TEST_CASE("malformed input reports the offending key") {
    CHECK(error_text("preset = paper-default\nlayers = 2\n"
                     "[coupling]\nunits = w0sq\npattern = nearest-neighbor\n"
                     "omega12_sq = -9\n")
              .find("omega12_sq") != std::string::npos);
    CHECK(error_text("dimension = 1\nlayers = 2\nomega0_units = w0\n"
                     "[coupling]\nunits = w0sq\npattern = explicit\n"
                     "pair.0.1 = 1 -4 4 1\n")
              .find("pair.0.1") != std::string::npos);
    CHECK(error_text("layers = 2\nomega0_units = w0\n").find("dimension") !=
          std::string::npos);
    CHECK(error_text("dimension = 1\nlayers = 2\n").find("omega0_units") !=
          std::string::npos);
}

TEST_CASE("unknown keys and sections are hard errors with line numbers") {
    const std::string unknown_key = error_text(std::string(kMinimalPreset) + "tempo = 3\n");
    CHECK(unknown_key.find("tempo") != std::string::npos);
    CHECK(unknown_key.find("line 3") != std::string::npos);

    CHECK(error_text(std::string(kMinimalPreset) + "[oscillator]\nq = 1\n")
              .find("oscillator") != std::string::npos);
    const std::string bad_layer = error_text("dimension = 1\nlayers = 2\nomega0_units = w0\n"
                                             "[layer.7]\nmass = 1\n");
    CHECK(bad_layer.find("layer index 7") != std::string::npos);
    CHECK(bad_layer.find("out of range") != std::string::npos);
}

TEST_CASE("duplicate keys and duplicate pairs are rejected") {
    CHECK(error_text("dimension = 1\ndimension = 2\nlayers = 2\nomega0_units = w0\n")
              .find("duplicate") != std::string::npos);
    CHECK(error_text("dimension = 1\nlayers = 2\nomega0_units = w0\n"
                     "[coupling]\nunits = w0sq\npattern = explicit\n"
                     "pair.0.1 = 1\npair.1.0 = 2\n")
              .find("pair") != std::string::npos);
}

TEST_CASE("unit tags are mandatory and checked") {
    CHECK(error_text("dimension = 1\nlayers = 2\nomega0_units = hz\n")
              .find("omega0_units") != std::string::npos);
    CHECK(error_text("dimension = 1\nlayers = 2\nomega0_units = w0\n"
                     "[coupling]\npattern = nearest-neighbor\nomega12_sq = 9\n")
              .find("units") != std::string::npos);
}

TEST_CASE("strength without kind and kind without strength are errors") {
    CHECK(error_text("dimension = 1\nlayers = 2\nomega0_units = w0\nstrength = 2\n") !=
          "");
    CHECK(error_text("dimension = 1\nlayers = 2\nomega0_units = w0\n"
                     "intra = delta\n") != "");
    // intra declared on a singly occupied layer
    CHECK(error_text("dimension = 1\nlayers = 2\nomega0_units = w0\noccupancy = 1\n"
                     "[layer.0]\nintra = delta\nstrength = 1\n") != "");
}

TEST_CASE("auxiliary sections parse into their parameter blocks") {
    const RunConfig c = parse_text(
        "preset = paper-default\n"
        "layers = 4\n"
        "\n"
        "[shift]\n"
        "e12 = 2\n"
        "\n"
        "[sweep]\n"
        "axis = n_layers\n"
        "from = 2\n"
        "to = 8\n"
        "points = 4\n"
        "\n"
        "[spectrum]\n"
        "energy_cap = 12.5\n");
    CHECK(c.shift.enabled);
    CHECK(c.shift.e[0][1] == 2.0);
    CHECK(c.shift.e[0][2] == 0.0);
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->axis == SweepAxis::n_layers);
    CHECK(c.sweep->points == 4);
    CHECK_FALSE(c.sweep->log_scale);
    REQUIRE(c.spectrum_cap.has_value());
    CHECK(*c.spectrum_cap == 12.5);
}

TEST_CASE("separation strengths must fit the configured intra kind") {
    const std::string base =
        "dimension = 1\nlayers = 2\nomega0_units = w0\n"
        "intra = inverse-square\nstrength = 1\n"
        "[coupling]\nunits = w0sq\npattern = nearest-neighbor\nomega12_sq = 9\n";
    const RunConfig ok = parse_text(base + "[separation]\nn_max = 6\nstrengths = 0 1 2\n");
    REQUIRE(ok.separation.has_value());
    CHECK(ok.separation->n_max == 6);
    CHECK(ok.separation->strengths == std::vector<double>{0.0, 1.0, 2.0});

    CHECK(error_text(std::string(kMinimalPreset) +
                     "[separation]\nn_max = 6\nstrengths = 1\n") != "");
    CHECK(error_text(base + "[separation]\nn_max = 1\n") != "");
}

TEST_CASE("intra_scan validates kind, range and dimension") {
    const RunConfig c = parse_text(std::string(kMinimalPreset) +
                                   "[intra_scan]\nkind = inverse-square\n"
                                   "from = 0\nto = 3\npoints = 7\nlevels = 2\n");
    REQUIRE(c.intra_scan.has_value());
    CHECK(c.intra_scan->kind == IntraKind::inverse_square);
    CHECK(c.intra_scan->levels == 2);

    CHECK(error_text(std::string(kMinimalPreset) +
                     "[intra_scan]\nkind = harmonic\nfrom = 1\nto = 2\npoints = 2\n") != "");
    CHECK(error_text(std::string(kMinimalPreset) +
                     "[intra_scan]\nkind = inverse-square\nfrom = -1\nto = 2\npoints = 2\n") !=
          "");
    CHECK(error_text(std::string(kMinimalPreset) +
                     "[intra_scan]\nkind = delta\nfrom = 0\nto = 2\npoints = 2\n") != "");
    // log spacing cannot straddle zero
    CHECK(error_text(std::string(kMinimalPreset) +
                     "[sweep]\naxis = inverse_square_g\nfrom = 0\nto = 2\npoints = 3\n"
                     "scale = log\n") != "");
}

TEST_CASE("serialization round-trips byte for byte") {
    const std::string sources[] = {
        std::string(kMinimalPreset),
        "dimension = 2\n"
        "layers = 3\n"
        "omega0_units = w0\n"
        "occupancy = 2\n"
        "intra = delta\n"
        "strength = 0.75\n"
        "[layer.1]\n"
        "occupancy = 1\n"
        "mass = 2.5\n"
        "[layer.2]\n"
        "omega0 = 1.25\n"
        "[coupling]\n"
        "units = w0sq\n"
        "pattern = explicit\n"
        "pair.0.1 = 2 2\n"
        "pair.1.2 = 3\n"
        "[shift]\n"
        "e.0.1 = 1.5\n"
        "[sweep]\n"
        "axis = ln_b_over_a2\n"
        "from = -2\n"
        "to = 2\n"
        "points = 9\n"
        "[separation]\n"
        "n_max = 8\n"
        "strengths = 0.5 1\n"
        "[spectrum]\n"
        "energy_cap = 20\n"
        "[intra_scan]\n"
        "kind = delta\n"
        "from = 0.1\n"
        "to = 10\n"
        "points = 5\n"
        "scale = log\n"
        "levels = 3\n",
    };
    for (const std::string& src : sources) {
        const RunConfig first = parse_text(src);
        const std::string canonical = serialize_config(first);
        const RunConfig second = parse_text(canonical);
        CHECK(serialize_config(second) == canonical);
        CHECK(second.system.n_layers() == first.system.n_layers());
        CHECK(second.system.dimension == first.system.dimension);
        for (int i = 0; i < first.system.n_layers(); ++i)
            for (int k = 0; k < first.system.n_layers(); ++k)
                CHECK(second.system.interlayer_omega2[i][k] ==
                      first.system.interlayer_omega2[i][k]);
        CHECK(second.shift.enabled == first.shift.enabled);
        CHECK(second.sweep.has_value() == first.sweep.has_value());
        CHECK(second.intra_scan.has_value() == first.intra_scan.has_value());
    }
}

TEST_CASE("missing files fail with config_error") {
    CHECK_THROWS_AS(parse_config_file("/nonexistent/layerchain.cfg"), config_error);
}

TEST_SUITE_END();

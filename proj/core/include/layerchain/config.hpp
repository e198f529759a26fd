#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "layerchain/assembly.hpp"
#include "layerchain/model.hpp"

namespace layerchain {

// Parameters for the `sweep` subcommand, read from the [sweep] section.
struct SweepParams {
    SweepAxis axis = SweepAxis::n_layers;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
    bool log_scale = false;
};

// Parameters for the `separation` subcommand ([separation] section).  An
// empty strengths list means "use the strength configured on the layers".
struct SeparationParams {
    int n_max = 2;
    std::vector<double> strengths;
};

// Parameters for the `intra` subcommand ([intra_scan] section): a pure
// two-body scan over the interaction strength, independent of the chain.
struct IntraScanParams {
    IntraKind kind = IntraKind::inverse_square;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
    bool log_scale = false;
    int levels = 4;
};

// Everything a run needs that comes from the config file.  The subcommand
// and file paths live on the command line, not here.
struct RunConfig {
    SystemSpec system;
    ShiftModel shift;  // disabled unless a [shift] section is present
    std::optional<SweepParams> sweep;
    std::optional<SeparationParams> separation;
    std::optional<double> spectrum_cap;
    std::optional<IntraScanParams> intra_scan;
};

// Parses the line-oriented `key = value` format with [layer.k], [coupling],
// [shift], [sweep], [separation], [spectrum] and [intra_scan] sections.
// Unknown keys and sections are hard errors; every failure throws
// config_error with a line number where one applies.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

// Canonical text form: preset and pattern shorthands expanded, every layer
// spelled out, shortest round-trip number formatting.  Feeding the result
// back through parse_config reproduces it byte for byte.
std::string serialize_config(const RunConfig& config);

}  // namespace layerchain

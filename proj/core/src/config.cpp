#include "layerchain/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "layerchain/errors.hpp"

namespace layerchain {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

struct Section {
    int line = 0;
    std::map<std::string, Entry> entries;
};

[[noreturn]] void fail(int line, const std::string& message) {
    throw config_error("line " + std::to_string(line) + ": " + message);
}

[[noreturn]] void fail(const std::string& message) { throw config_error(message); }

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::map<std::string, Section> read_sections(std::istream& in) {
    std::map<std::string, Section> sections;
    sections[""].line = 0;
    std::string current;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(number, "malformed section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) fail(number, "empty section name");
            if (sections.count(name)) fail(number, "section [" + name + "] declared twice");
            sections[name].line = number;
            current = name;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(number, "expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(number, "missing key before '='");
        if (value.empty()) fail(number, "missing value for key '" + key + "'");
        if (!sections[current].entries.emplace(key, Entry{value, number}).second)
            fail(number, "duplicate key '" + key + "'");
    }
    return sections;
}

double to_double(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + e.value.size() || !std::isfinite(v))
        fail(e.line, "key '" + key + "' expects a finite number, got '" + e.value + "'");
    return v;
}

int to_int(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end != begin + e.value.size() || v < -1000000000L || v > 1000000000L)
        fail(e.line, "key '" + key + "' expects an integer, got '" + e.value + "'");
    return static_cast<int>(v);
}

std::vector<double> to_double_list(const Entry& e, const std::string& key) {
    std::istringstream stream(e.value);
    std::vector<double> values;
    std::string token;
    while (stream >> token) values.push_back(to_double(Entry{token, e.line}, key));
    return values;
}

bool to_index(const std::string& text, int& out) {
    if (text.empty() || text.size() > 6) return false;
    int v = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

// Splits "<prefix><i>.<k>" into indices; returns false when the tail is not
// two dot-separated integers.
bool parse_pair_key(const std::string& key, const std::string& prefix, int& i, int& k) {
    const std::string tail = key.substr(prefix.size());
    const std::size_t dot = tail.find('.');
    if (dot == std::string::npos) return false;
    return to_index(tail.substr(0, dot), i) && to_index(tail.substr(dot + 1), k);
}

class SectionView {
public:
    SectionView(std::string name, const Section& section)
        : name_(std::move(name)), section_(section) {}

    const Entry* find(const std::string& key) {
        auto it = section_.entries.find(key);
        if (it == section_.entries.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    const Entry& require(const std::string& key) {
        const Entry* e = find(key);
        if (!e) fail("missing required key '" + key + "' in " + where());
        return *e;
    }

    void mark_used(const std::string& key) { used_.insert(key); }

    const std::map<std::string, Entry>& entries() const { return section_.entries; }

    // Unclaimed keys are hard errors; report the earliest one.
    void finish() const {
        const Entry* first = nullptr;
        const std::string* first_key = nullptr;
        for (const auto& [key, entry] : section_.entries) {
            if (used_.count(key)) continue;
            if (!first || entry.line < first->line) {
                first = &entry;
                first_key = &key;
            }
        }
        if (first) fail(first->line, "unknown key '" + *first_key + "' in " + where());
    }

private:
    std::string where() const { return name_.empty() ? "top level" : "[" + name_ + "]"; }

    std::string name_;
    const Section& section_;
    std::set<std::string> used_;
};

IntraKind parse_kind(const Entry& e) {
    if (e.value == "none") return IntraKind::none;
    if (e.value == "inverse-square") return IntraKind::inverse_square;
    if (e.value == "delta") return IntraKind::delta;
    if (e.value == "harmonic") return IntraKind::harmonic;
    fail(e.line, "unknown intra kind '" + e.value +
                     "' (expected none, inverse-square, delta, or harmonic)");
}

void check_strength(IntraKind kind, double strength, int line) {
    switch (kind) {
        case IntraKind::inverse_square:
            if (!(strength >= 0.0)) fail(line, "inverse-square strength g must be >= 0");
            return;
        case IntraKind::delta:
            if (!(strength > 0.0)) fail(line, "delta scattering length must be > 0");
            return;
        case IntraKind::harmonic:
            if (!(strength > 0.0)) fail(line, "harmonic intra frequency must be > 0");
            return;
        case IntraKind::none:
            return;
    }
}

IntraPotential resolve_intra(const Entry* kind_entry, const Entry* strength_entry,
                             const IntraPotential& inherited) {
    IntraKind kind = inherited.kind;
    double strength = inherited.strength;
    bool have_strength = inherited.kind != IntraKind::none;
    if (kind_entry) {
        kind = parse_kind(*kind_entry);
        if (kind != inherited.kind || kind == IntraKind::none) have_strength = false;
    }
    if (strength_entry) {
        if (kind == IntraKind::none)
            fail(strength_entry->line, "strength requires an interacting intra kind");
        strength = to_double(*strength_entry, "strength");
        check_strength(kind, strength, strength_entry->line);
        have_strength = true;
    }
    if (kind == IntraKind::none) return IntraPotential::none();
    if (!have_strength)
        fail(kind_entry->line, "intra kind '" + kind_entry->value + "' needs a strength value");
    return {kind, strength};
}

SweepAxis parse_axis(const Entry& e) {
    if (e.value == "n_layers") return SweepAxis::n_layers;
    if (e.value == "inverse_square_g") return SweepAxis::inverse_square_g;
    if (e.value == "a1_over_b") return SweepAxis::a1_over_b;
    if (e.value == "ln_b_over_a2") return SweepAxis::ln_b_over_a2;
    fail(e.line, "unknown axis '" + e.value +
                     "' (expected n_layers, inverse_square_g, a1_over_b, or ln_b_over_a2)");
}

// from/to/points/scale block shared by [sweep] and [intra_scan].
void parse_range(SectionView& view, double& from, double& to, int& points, bool& log_scale) {
    from = to_double(view.require("from"), "from");
    to = to_double(view.require("to"), "to");
    points = to_int(view.require("points"), "points");
    const Entry* points_entry = view.find("points");
    if (points < 1 || points > 100000) fail(points_entry->line, "points must be in [1, 100000]");
    log_scale = false;
    if (const Entry* e = view.find("scale")) {
        if (e->value == "log")
            log_scale = true;
        else if (e->value != "linear")
            fail(e->line, "scale must be 'linear' or 'log'");
        if (log_scale && (!(from > 0.0) || !(to > 0.0)))
            fail(e->line, "log scale requires positive from/to");
    }
}

std::string fmt(double v) {
    char buf[40];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

const char* kind_name(IntraKind kind) {
    switch (kind) {
        case IntraKind::none: return "none";
        case IntraKind::inverse_square: return "inverse-square";
        case IntraKind::delta: return "delta";
        case IntraKind::harmonic: return "harmonic";
    }
    return "none";
}

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::n_layers: return "n_layers";
        case SweepAxis::inverse_square_g: return "inverse_square_g";
        case SweepAxis::a1_over_b: return "a1_over_b";
        case SweepAxis::ln_b_over_a2: return "ln_b_over_a2";
    }
    return "n_layers";
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    const std::map<std::string, Section> sections = read_sections(in);

    SectionView top("", sections.at(""));

    bool preset = false;
    if (const Entry* e = top.find("preset")) {
        if (e->value != "paper-default") fail(e->line, "unknown preset '" + e->value + "'");
        preset = true;
    }

    int dimension = 1;
    if (const Entry* e = top.find("dimension")) {
        dimension = to_int(*e, "dimension");
        if (dimension < 1 || dimension > 3) fail(e->line, "dimension must be 1, 2, or 3");
    } else if (!preset) {
        fail("missing required key 'dimension'");
    }

    int n_layers = 0;
    if (const Entry* e = top.find("layers")) {
        n_layers = to_int(*e, "layers");
        if (n_layers < 1 || n_layers > 4096) fail(e->line, "layers must be in [1, 4096]");
    } else {
        fail("missing required key 'layers'");
    }

    // Section names are validated up front so typos are reported even when
    // the section would not otherwise be consulted.
    for (const auto& [name, section] : sections) {
        if (name.empty() || name == "coupling" || name == "shift" || name == "sweep" ||
            name == "separation" || name == "spectrum" || name == "intra_scan")
            continue;
        if (name.rfind("layer.", 0) == 0) {
            int index = 0;
            if (!to_index(name.substr(6), index))
                fail(section.line, "malformed layer index in [" + name + "]");
            if (index >= n_layers)
                fail(section.line, "layer index " + std::to_string(index) +
                                       " out of range (layers = " + std::to_string(n_layers) + ")");
            continue;
        }
        fail(section.line, "unknown section [" + name + "]");
    }

    const Entry* units = top.find("omega0_units");
    if (units && units->value != "w0")
        fail(units->line, "omega0_units must be 'w0' (unit mismatch)");

    double default_omega0 = 1.0;
    bool any_omega0 = false;
    if (const Entry* e = top.find("omega0")) {
        default_omega0 = to_double(*e, "omega0");
        if (!(default_omega0 > 0.0)) fail(e->line, "omega0 must be positive");
        any_omega0 = true;
    }
    int default_occupancy = 2;
    if (const Entry* e = top.find("occupancy")) {
        default_occupancy = to_int(*e, "occupancy");
        if (default_occupancy != 1 && default_occupancy != 2)
            fail(e->line, "occupancy must be 1 or 2");
    }
    double default_mass = 1.0;
    if (const Entry* e = top.find("mass")) {
        default_mass = to_double(*e, "mass");
        if (!(default_mass > 0.0)) fail(e->line, "mass must be positive");
    }
    const IntraPotential default_intra =
        resolve_intra(top.find("intra"), top.find("strength"), IntraPotential::none());

    std::vector<LayerSpec> layers;
    std::vector<double> omega0(static_cast<std::size_t>(n_layers), default_omega0);
    layers.reserve(static_cast<std::size_t>(n_layers));
    for (int k = 0; k < n_layers; ++k) {
        LayerSpec layer;
        layer.occupancy = default_occupancy;
        layer.mass = default_mass;
        IntraPotential intra = default_intra;
        const auto it = sections.find("layer." + std::to_string(k));
        if (it != sections.end()) {
            SectionView view("layer." + std::to_string(k), it->second);
            if (const Entry* e = view.find("occupancy")) {
                layer.occupancy = to_int(*e, "occupancy");
                if (layer.occupancy != 1 && layer.occupancy != 2)
                    fail(e->line, "occupancy must be 1 or 2");
            }
            if (const Entry* e = view.find("mass")) {
                layer.mass = to_double(*e, "mass");
                if (!(layer.mass > 0.0)) fail(e->line, "mass must be positive");
            }
            if (const Entry* e = view.find("omega0")) {
                omega0[static_cast<std::size_t>(k)] = to_double(*e, "omega0");
                if (!(omega0[static_cast<std::size_t>(k)] > 0.0))
                    fail(e->line, "omega0 must be positive");
                any_omega0 = true;
            }
            const Entry* kind_entry = view.find("intra");
            const Entry* strength_entry = view.find("strength");
            if (layer.occupancy == 1 && (kind_entry || strength_entry))
                fail((kind_entry ? kind_entry : strength_entry)->line,
                     "intra potential requires occupancy 2");
            intra = resolve_intra(kind_entry, strength_entry, default_intra);
            view.finish();
        }
        layer.intra = layer.occupancy == 2 ? intra : IntraPotential::none();
        layers.push_back(layer);
    }

    if (!units && (!preset || any_omega0))
        fail("missing required key 'omega0_units' (must be 'w0')");

    std::vector<PairCoupling> couplings;
    const auto coupling_section = sections.find("coupling");
    if (coupling_section == sections.end()) {
        if (preset) {
            for (int k = 0; k + 1 < n_layers; ++k)
                couplings.push_back({k, k + 1, {9.0}});
        } else if (n_layers > 1) {
            fail("missing [coupling] section");
        }
    } else {
        SectionView view("coupling", coupling_section->second);
        const Entry& coupling_units = view.require("units");
        if (coupling_units.value != "w0sq")
            fail(coupling_units.line, "coupling units must be 'w0sq' (unit mismatch)");

        std::string pattern = preset ? "nearest-neighbor" : "explicit";
        const Entry* pattern_entry = view.find("pattern");
        if (pattern_entry) {
            pattern = pattern_entry->value;
            if (pattern != "nearest-neighbor" && pattern != "all-pairs" && pattern != "explicit")
                fail(pattern_entry->line,
                     "pattern must be nearest-neighbor, all-pairs, or explicit");
        }

        double omega12_sq = preset ? 9.0 : 0.0;
        bool have_omega12 = preset;
        const Entry* omega12_entry = view.find("omega12_sq");
        if (omega12_entry) {
            omega12_sq = to_double(*omega12_entry, "omega12_sq");
            if (!(omega12_sq > 0.0)) fail(omega12_entry->line, "key 'omega12_sq' must be positive");
            have_omega12 = true;
        }

        std::set<std::pair<int, int>> declared;
        for (const auto& [key, entry] : view.entries()) {
            if (key.rfind("pair.", 0) != 0) continue;
            view.mark_used(key);
            int i = 0;
            int k = 0;
            if (!parse_pair_key(key, "pair.", i, k))
                fail(entry.line, "malformed pair key '" + key + "' (expected pair.<i>.<k>)");
            if (pattern != "explicit")
                fail(entry.line, "pair keys require pattern = explicit");
            if (i >= n_layers || k >= n_layers || i == k)
                fail(entry.line, "key '" + key + "' names an invalid layer pair");
            if (!declared.emplace(std::min(i, k), std::max(i, k)).second)
                fail(entry.line, "pair (" + std::to_string(i) + ", " + std::to_string(k) +
                                     ") declared twice");
            const std::vector<double> values = to_double_list(entry, key);
            if (values.size() != 1 && values.size() != 2 && values.size() != 4)
                fail(entry.line, "key '" + key + "' expects 1, 2, or 4 values");
            for (double v : values)
                if (!(v > 0.0)) fail(entry.line, "key '" + key + "' values must be positive");
            couplings.push_back({i, k, values});
        }

        if (pattern == "explicit") {
            if (omega12_entry)
                fail(omega12_entry->line,
                     "omega12_sq requires pattern nearest-neighbor or all-pairs");
            if (couplings.empty() && n_layers > 1)
                fail(coupling_section->second.line, "[coupling] declares no pairs");
        } else {
            if (!have_omega12)
                fail("missing required key 'omega12_sq' in [coupling]");
            if (pattern == "nearest-neighbor") {
                for (int k = 0; k + 1 < n_layers; ++k)
                    couplings.push_back({k, k + 1, {omega12_sq}});
            } else {
                for (int i = 0; i < n_layers; ++i)
                    for (int k = i + 1; k < n_layers; ++k)
                        couplings.push_back({i, k, {omega12_sq}});
            }
        }
        view.finish();
    }

    RunConfig config;
    try {
        config.system = make_system(dimension, std::move(layers), std::move(omega0),
                                    std::move(couplings));
    } catch (const error& err) {
        fail(std::string("invalid system: ") + err.what());
    }

    if (const auto it = sections.find("shift"); it != sections.end()) {
        SectionView view("shift", it->second);
        const Entry* e12 = view.find("e12");
        std::vector<std::pair<std::pair<int, int>, const Entry*>> pair_entries;
        for (const auto& [key, entry] : view.entries()) {
            if (key == "e12" || key.rfind("e.", 0) != 0) continue;
            view.mark_used(key);
            int i = 0;
            int k = 0;
            if (!parse_pair_key(key, "e.", i, k))
                fail(entry.line, "malformed shift key '" + key + "' (expected e.<i>.<k>)");
            if (i >= n_layers || k >= n_layers || i == k)
                fail(entry.line, "key '" + key + "' names an invalid layer pair");
            pair_entries.push_back({{std::min(i, k), std::max(i, k)}, &entry});
        }
        if (e12 && !pair_entries.empty())
            fail(e12->line, "use either e12 or e.<i>.<k> keys, not both");
        if (e12) {
            config.shift =
                ShiftModel::nearest_neighbor(n_layers, to_double(*e12, "e12"));
        } else {
            config.shift.enabled = true;
            config.shift.e.assign(static_cast<std::size_t>(n_layers),
                                  std::vector<double>(static_cast<std::size_t>(n_layers), 0.0));
            std::set<std::pair<int, int>> seen;
            for (const auto& [pair, entry] : pair_entries) {
                if (!seen.insert(pair).second)
                    fail(entry->line, "shift pair declared twice");
                const double v = to_double(*entry, "e.<i>.<k>");
                config.shift.e[static_cast<std::size_t>(pair.first)]
                              [static_cast<std::size_t>(pair.second)] = v;
                config.shift.e[static_cast<std::size_t>(pair.second)]
                              [static_cast<std::size_t>(pair.first)] = v;
            }
        }
        view.finish();
    }

    if (const auto it = sections.find("sweep"); it != sections.end()) {
        SectionView view("sweep", it->second);
        SweepParams params;
        params.axis = parse_axis(view.require("axis"));
        parse_range(view, params.from, params.to, params.points, params.log_scale);
        view.finish();
        config.sweep = params;
    }

    if (const auto it = sections.find("separation"); it != sections.end()) {
        SectionView view("separation", it->second);
        SeparationParams params;
        const Entry& n_max = view.require("n_max");
        params.n_max = to_int(n_max, "n_max");
        if (params.n_max < 2 || params.n_max > 4096)
            fail(n_max.line, "n_max must be in [2, 4096]");
        if (const Entry* e = view.find("strengths")) {
            params.strengths = to_double_list(*e, "strengths");
            IntraKind kind = IntraKind::none;
            for (const LayerSpec& layer : config.system.layers)
                if (layer.occupancy == 2) {
                    kind = layer.intra.kind;
                    break;
                }
            if (kind == IntraKind::none)
                fail(e->line, "strengths require an interacting intra kind on the layers");
            for (double s : params.strengths) check_strength(kind, s, e->line);
        }
        view.finish();
        config.separation = params;
    }

    if (const auto it = sections.find("spectrum"); it != sections.end()) {
        SectionView view("spectrum", it->second);
        const Entry& cap = view.require("energy_cap");
        const double value = to_double(cap, "energy_cap");
        if (!(value > 0.0)) fail(cap.line, "energy_cap must be positive");
        view.finish();
        config.spectrum_cap = value;
    }

    if (const auto it = sections.find("intra_scan"); it != sections.end()) {
        SectionView view("intra_scan", it->second);
        IntraScanParams params;
        const Entry& kind = view.require("kind");
        params.kind = parse_kind(kind);
        if (params.kind != IntraKind::inverse_square && params.kind != IntraKind::delta)
            fail(kind.line, "intra scan supports inverse-square and delta kinds");
        parse_range(view, params.from, params.to, params.points, params.log_scale);
        if (const Entry* e = view.find("levels")) {
            params.levels = to_int(*e, "levels");
            if (params.levels < 1 || params.levels > 64)
                fail(e->line, "levels must be in [1, 64]");
        }
        // The scan axis is the raw solver argument: g for inverse-square,
        // a1/b for delta in 1D, ln(b/a2) for delta in 2D.
        const int d = config.system.dimension;
        if (params.kind == IntraKind::delta && d == 3)
            fail(kind.line, "delta scans are defined in 1 and 2 dimensions only");
        if (params.kind == IntraKind::inverse_square &&
            (!(params.from >= 0.0) || !(params.to >= 0.0)))
            fail(kind.line, "inverse-square scan needs g >= 0");
        if (params.kind == IntraKind::delta && d == 1 &&
            (!(params.from > 0.0) || !(params.to > 0.0)))
            fail(kind.line, "1D delta scan needs a1/b > 0");
        view.finish();
        config.intra_scan = params;
    }

    top.finish();
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    return parse_config(in);
}

std::string serialize_config(const RunConfig& config) {
    const SystemSpec& system = config.system;
    const int n = system.n_layers();
    std::ostringstream out;
    out << "dimension = " << system.dimension << "\n";
    out << "layers = " << n << "\n";
    out << "omega0_units = w0\n";

    for (int k = 0; k < n; ++k) {
        const LayerSpec& layer = system.layers[static_cast<std::size_t>(k)];
        out << "\n[layer." << k << "]\n";
        out << "occupancy = " << layer.occupancy << "\n";
        out << "mass = " << fmt(layer.mass) << "\n";
        out << "omega0 = " << fmt(system.omega0[static_cast<std::size_t>(k)]) << "\n";
        if (layer.occupancy == 2) {
            out << "intra = " << kind_name(layer.intra.kind) << "\n";
            if (layer.intra.kind != IntraKind::none)
                out << "strength = " << fmt(layer.intra.strength) << "\n";
        }
    }

    if (!system.couplings.empty()) {
        out << "\n[coupling]\n";
        out << "units = w0sq\n";
        std::vector<PairCoupling> sorted = system.couplings;
        for (PairCoupling& pc : sorted) {
            if (pc.i > pc.k) {
                std::swap(pc.i, pc.k);
                if (pc.omega2.size() == 4) std::swap(pc.omega2[1], pc.omega2[2]);
            }
        }
        std::sort(sorted.begin(), sorted.end(),
                  [](const PairCoupling& a, const PairCoupling& b) {
                      return a.i != b.i ? a.i < b.i : a.k < b.k;
                  });
        for (const PairCoupling& pc : sorted) {
            out << "pair." << pc.i << "." << pc.k << " =";
            for (double v : pc.omega2) out << " " << fmt(v);
            out << "\n";
        }
    }

    if (config.shift.enabled && n >= 2) {
        out << "\n[shift]\n";
        bool uniform_nn = true;
        const double e12 = config.shift.e[0][1];
        for (int i = 0; i < n && uniform_nn; ++i)
            for (int k = i + 1; k < n && uniform_nn; ++k) {
                const double v = config.shift.e[static_cast<std::size_t>(i)]
                                               [static_cast<std::size_t>(k)];
                uniform_nn = k == i + 1 ? v == e12 : v == 0.0;
            }
        if (uniform_nn) {
            out << "e12 = " << fmt(e12) << "\n";
        } else {
            for (int i = 0; i < n; ++i)
                for (int k = i + 1; k < n; ++k) {
                    const double v = config.shift.e[static_cast<std::size_t>(i)]
                                                   [static_cast<std::size_t>(k)];
                    if (v != 0.0) out << "e." << i << "." << k << " = " << fmt(v) << "\n";
                }
        }
    }

    if (config.sweep) {
        out << "\n[sweep]\n";
        out << "axis = " << axis_name(config.sweep->axis) << "\n";
        out << "from = " << fmt(config.sweep->from) << "\n";
        out << "to = " << fmt(config.sweep->to) << "\n";
        out << "points = " << config.sweep->points << "\n";
        out << "scale = " << (config.sweep->log_scale ? "log" : "linear") << "\n";
    }

    if (config.separation) {
        out << "\n[separation]\n";
        out << "n_max = " << config.separation->n_max << "\n";
        if (!config.separation->strengths.empty()) {
            out << "strengths =";
            for (double s : config.separation->strengths) out << " " << fmt(s);
            out << "\n";
        }
    }

    if (config.spectrum_cap) out << "\n[spectrum]\nenergy_cap = " << fmt(*config.spectrum_cap) << "\n";

    if (config.intra_scan) {
        out << "\n[intra_scan]\n";
        out << "kind = " << kind_name(config.intra_scan->kind) << "\n";
        out << "from = " << fmt(config.intra_scan->from) << "\n";
        out << "to = " << fmt(config.intra_scan->to) << "\n";
        out << "points = " << config.intra_scan->points << "\n";
        out << "scale = " << (config.intra_scan->log_scale ? "log" : "linear") << "\n";
        out << "levels = " << config.intra_scan->levels << "\n";
    }

    return out.str();
}

}  // namespace layerchain

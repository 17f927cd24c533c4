#pragma once

// Strict config file handling. The accepted grammar is a TOML subset:
// [section] headers, key = value pairs, '#' comments, bools, quoted strings
// and floats. Unknown sections or keys are parse errors, not warnings, so a
// typo cannot silently fall back to a default. serialize_config() emits a
// canonical file that parses back to an identical ScenarioConfig.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "unruh/errors.hpp"
#include "unruh/scenario.hpp"

namespace unruh {

namespace config_detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// strip a trailing comment, honoring quoted strings
inline std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

struct RawConfig {
    // section -> key -> (value text, line number)
    std::map<std::string, std::map<std::string, std::pair<std::string, int>>> kv;

    bool has(const std::string& sec, const std::string& key) const {
        auto s = kv.find(sec);
        return s != kv.end() && s->second.count(key) > 0;
    }
    const std::string& get(const std::string& sec, const std::string& key) const {
        return kv.at(sec).at(key).first;
    }
};

inline RawConfig parse_raw(std::istream& in, const std::string& origin) {
    RawConfig raw;
    std::string line, section;
    int lineno = 0;
    auto err = [&origin](int ln, const std::string& msg) {
        throw ParseError(origin + ":" + std::to_string(ln) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) err(lineno, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) err(lineno, "empty section name");
            raw.kv[section]; // section may legitimately stay empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) err(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) err(lineno, "empty key");
        if (val.empty()) err(lineno, "empty value for key '" + key + "'");
        if (section.empty()) err(lineno, "key '" + key + "' outside any section");
        auto& sec = raw.kv[section];
        if (sec.count(key)) err(lineno, "duplicate key '" + key + "' in [" + section + "]");
        sec[key] = {val, lineno};
    }
    return raw;
}

inline double parse_float(const std::string& v, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || errno == ERANGE) {
        throw ParseError(where + ": '" + v + "' is not a number");
    }
    return x;
}

inline long long parse_int(const std::string& v, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || errno == ERANGE) {
        throw ParseError(where + ": '" + v + "' is not an integer");
    }
    return x;
}

inline bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ParseError(where + ": '" + v + "' is not true/false");
}

inline std::string parse_string(const std::string& v, const std::string& where) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
        throw ParseError(where + ": expected a quoted string, got '" + v + "'");
    }
    return v.substr(1, v.size() - 2);
}

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace config_detail

inline ScenarioConfig config_from_raw(const config_detail::RawConfig& raw,
                                      const std::string& origin) {
    using namespace config_detail;
    static const std::map<std::string, std::set<std::string>> schema = {
        {"frame", {"a"}},
        {"particle", {"mass", "charge"}},
        {"coupling", {"B", "omega"}},
        {"potential", {"kind", "L", "l", "E_left0", "E_right0", "cancel_tilt_offset",
                       "origin", "file", "include_tilt", "single_grid"}},
        {"grid", {"n"}},
        {"levels", {"k", "compute_exact", "degeneracy_threshold"}},
        {"relaxation", {"enabled", "model", "gamma0", "t_max_gamma", "dt_safety", "samples"}},
        {"regime", {"r1_max", "r2_max", "r3_max", "strict"}},
        {"output", {"emit_states", "seed"}},
    };
    for (const auto& [sec, keys] : raw.kv) {
        auto it = schema.find(sec);
        if (it == schema.end()) {
            throw ParseError(origin + ": unknown section [" + sec + "]");
        }
        for (const auto& [key, val] : keys) {
            if (!it->second.count(key)) {
                throw ParseError(origin + ":" + std::to_string(val.second) +
                                 ": unknown key '" + key + "' in [" + sec + "]");
            }
        }
    }

    ScenarioConfig c;
    auto where = [&origin](const std::string& sec, const std::string& key) {
        return origin + ": [" + sec + "] " + key;
    };
    auto getf = [&](const char* sec, const char* key, double& dst) {
        if (raw.has(sec, key)) dst = parse_float(raw.get(sec, key), where(sec, key));
    };
    auto getb = [&](const char* sec, const char* key, bool& dst) {
        if (raw.has(sec, key)) dst = parse_bool(raw.get(sec, key), where(sec, key));
    };
    auto geti = [&](const char* sec, const char* key, int& dst) {
        if (raw.has(sec, key)) {
            dst = static_cast<int>(parse_int(raw.get(sec, key), where(sec, key)));
        }
    };

    if (!raw.has("frame", "a")) throw ParseError(origin + ": missing required [frame] a");
    getf("frame", "a", c.a);
    getf("particle", "mass", c.mass);
    getf("particle", "charge", c.charge);

    if (raw.has("coupling", "B") && raw.has("coupling", "omega")) {
        throw ParseError(origin + ": [coupling] give B or omega, not both");
    }
    getf("coupling", "B", c.b_field);
    if (raw.has("coupling", "omega")) {
        c.omega = parse_float(raw.get("coupling", "omega"), where("coupling", "omega"));
        if (!(c.omega >= 0.0)) throw ValidationError("config: omega >= 0");
    }

    if (!raw.has("potential", "kind")) {
        throw ParseError(origin + ": missing required [potential] kind");
    }
    const std::string kind = parse_string(raw.get("potential", "kind"),
                                          where("potential", "kind"));
    if (kind == "infinite_well") c.kind = PotentialKind::infinite_well;
    else if (kind == "double_well") c.kind = PotentialKind::double_well;
    else if (kind == "tabulated") c.kind = PotentialKind::tabulated;
    else throw ParseError(origin + ": [potential] kind '" + kind +
                          "' not one of infinite_well, double_well, tabulated");

    if (c.kind != PotentialKind::tabulated && !raw.has("potential", "L")) {
        throw ParseError(origin + ": missing required [potential] L");
    }
    getf("potential", "L", c.width);
    getf("potential", "l", c.separation);
    getf("potential", "E_left0", c.floor_left);
    getf("potential", "E_right0", c.floor_right);
    getb("potential", "cancel_tilt_offset", c.cancel_tilt_offset);
    getf("potential", "origin", c.origin);
    if (raw.has("potential", "file")) {
        c.table_path = parse_string(raw.get("potential", "file"), where("potential", "file"));
    }
    getb("potential", "include_tilt", c.include_tilt);
    getb("potential", "single_grid", c.single_grid);

    geti("grid", "n", c.grid_n);
    geti("levels", "k", c.k_levels);
    getb("levels", "compute_exact", c.compute_exact);
    getf("levels", "degeneracy_threshold", c.degeneracy_threshold);

    getb("relaxation", "enabled", c.relax_enabled);
    if (raw.has("relaxation", "model")) {
        const std::string m = parse_string(raw.get("relaxation", "model"),
                                           where("relaxation", "model"));
        if (m == "metropolis") c.rate_kind = RateKind::metropolis;
        else if (m == "heat_bath") c.rate_kind = RateKind::heat_bath;
        else throw ParseError(origin + ": [relaxation] model '" + m +
                              "' not one of metropolis, heat_bath");
    }
    getf("relaxation", "gamma0", c.gamma0);
    getf("relaxation", "t_max_gamma", c.t_max_gamma);
    getf("relaxation", "dt_safety", c.dt_safety);
    geti("relaxation", "samples", c.relax_samples);

    getf("regime", "r1_max", c.regime.r1_max);
    getf("regime", "r2_max", c.regime.r2_max);
    getf("regime", "r3_max", c.regime.r3_max);
    getb("regime", "strict", c.strict_regime);

    getb("output", "emit_states", c.emit_states);
    if (raw.has("output", "seed")) {
        const long long s = parse_int(raw.get("output", "seed"), where("output", "seed"));
        if (s < 0) throw ValidationError("config: seed >= 0");
        c.seed = static_cast<std::uint64_t>(s);
    }

    validate_config(c);
    return c;
}

inline ScenarioConfig parse_config_text(const std::string& text,
                                        const std::string& origin = "<string>") {
    std::istringstream in(text);
    const auto raw = config_detail::parse_raw(in, origin);
    return config_from_raw(raw, origin);
}

inline ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("parse_config: cannot open " + path);
    const auto raw = config_detail::parse_raw(in, path);
    return config_from_raw(raw, path);
}

inline std::string serialize_config(const ScenarioConfig& c) {
    using config_detail::fmt17;
    std::ostringstream out;
    out << "[frame]\n"
        << "a = " << fmt17(c.a) << "\n\n";
    out << "[particle]\n"
        << "mass = " << fmt17(c.mass) << "\n"
        << "charge = " << fmt17(c.charge) << "\n\n";
    out << "[coupling]\n";
    if (c.omega >= 0.0) out << "omega = " << fmt17(c.omega) << "\n\n";
    else out << "B = " << fmt17(c.b_field) << "\n\n";
    out << "[potential]\n";
    switch (c.kind) {
    case PotentialKind::infinite_well: out << "kind = \"infinite_well\"\n"; break;
    case PotentialKind::double_well: out << "kind = \"double_well\"\n"; break;
    case PotentialKind::tabulated: out << "kind = \"tabulated\"\n"; break;
    }
    out << "L = " << fmt17(c.width) << "\n"
        << "l = " << fmt17(c.separation) << "\n"
        << "E_left0 = " << fmt17(c.floor_left) << "\n"
        << "E_right0 = " << fmt17(c.floor_right) << "\n"
        << "cancel_tilt_offset = " << (c.cancel_tilt_offset ? "true" : "false") << "\n"
        << "origin = " << fmt17(c.origin) << "\n";
    if (!c.table_path.empty()) out << "file = \"" << c.table_path << "\"\n";
    out << "include_tilt = " << (c.include_tilt ? "true" : "false") << "\n"
        << "single_grid = " << (c.single_grid ? "true" : "false") << "\n\n";
    out << "[grid]\n"
        << "n = " << c.grid_n << "\n\n";
    out << "[levels]\n"
        << "k = " << c.k_levels << "\n"
        << "compute_exact = " << (c.compute_exact ? "true" : "false") << "\n"
        << "degeneracy_threshold = " << fmt17(c.degeneracy_threshold) << "\n\n";
    out << "[relaxation]\n"
        << "enabled = " << (c.relax_enabled ? "true" : "false") << "\n"
        << "model = \"" << (c.rate_kind == RateKind::metropolis ? "metropolis" : "heat_bath")
        << "\"\n"
        << "gamma0 = " << fmt17(c.gamma0) << "\n"
        << "t_max_gamma = " << fmt17(c.t_max_gamma) << "\n"
        << "dt_safety = " << fmt17(c.dt_safety) << "\n"
        << "samples = " << c.relax_samples << "\n\n";
    out << "[regime]\n"
        << "r1_max = " << fmt17(c.regime.r1_max) << "\n"
        << "r2_max = " << fmt17(c.regime.r2_max) << "\n"
        << "r3_max = " << fmt17(c.regime.r3_max) << "\n"
        << "strict = " << (c.strict_regime ? "true" : "false") << "\n\n";
    out << "[output]\n"
        << "emit_states = " << (c.emit_states ? "true" : "false") << "\n"
        << "seed = " << c.seed << "\n";
    return out.str();
}

} // namespace unruh

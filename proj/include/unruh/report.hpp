#pragma once

// Result emission: CSV tables with fixed schemas, a JSON report mirroring
// ScenarioReport, and a run manifest. CSV floats are printed with 17
// significant digits so parsing them back reproduces the exact doubles.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unruh/config.hpp"
#include "unruh/scenario.hpp"
#include "unruh/version.hpp"

namespace unruh {

using nlohmann::json;

inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace report_detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

} // namespace report_detail

inline void write_spectrum_csv(const std::filesystem::path& path,
                               const ScenarioReport& rep) {
    auto out = report_detail::open_out(path);
    out << "n,E_dimless,E_joule,zbar_dimless,beta_bar_per_joule\n";
    for (const auto& lv : rep.levels) {
        out << lv.n << ',' << fmt_g17(lv.e_dimless) << ',' << fmt_g17(lv.e_si) << ','
            << fmt_g17(lv.zbar_dimless) << ',' << fmt_g17(lv.beta_bar_si) << '\n';
    }
}

inline void write_states_csv(const std::filesystem::path& path,
                             const ScenarioReport& rep) {
    auto out = report_detail::open_out(path);
    out << "n,z_dimless,z_meters,phi\n";
    for (const auto& sr : rep.states) {
        for (std::size_t i = 0; i < sr.zeta.size(); ++i) {
            out << sr.n << ',' << fmt_g17(sr.zeta[i]) << ','
                << fmt_g17(sr.zeta[i] * rep.l_star) << ',' << fmt_g17(sr.phi[i]) << '\n';
        }
    }
}

inline void write_relax_csv(const std::filesystem::path& path,
                            const ScenarioReport& rep) {
    auto out = report_detail::open_out(path);
    out << "t_seconds,level_index,population\n";
    for (std::size_t s = 0; s < rep.relax.times.size(); ++s) {
        for (std::size_t i = 0; i < rep.relax.populations[s].size(); ++i) {
            out << fmt_g17(rep.relax.times[s]) << ',' << i << ','
                << fmt_g17(rep.relax.populations[s][i]) << '\n';
        }
    }
}

inline void write_sweep_csv(const std::filesystem::path& path, const SweepReport& sw) {
    auto out = report_detail::open_out(path);
    out << "index,axis,value,status,message,beta_a_per_joule,T_a_kelvin,"
           "beta_eff_per_joule,T_eff_kelvin,beta_offset_rel,ground_log_weight_gap\n";
    for (const auto& r : sw.rows) {
        std::string msg = r.message;
        for (auto& ch : msg) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        out << r.index << ',' << to_string(sw.axis) << ',' << fmt_g17(r.value) << ','
            << r.status << ',' << msg << ',' << fmt_g17(r.beta_a_si) << ','
            << fmt_g17(r.t_a_kelvin) << ',' << fmt_g17(r.beta_eff_si) << ','
            << fmt_g17(r.t_eff_kelvin) << ',' << fmt_g17(r.beta_offset_rel) << ','
            << fmt_g17(r.ground_log_weight_gap) << '\n';
    }
}

inline json spin_state_json(const SpinThermalState& st) {
    return json{{"log_c_up", st.log_c_up},
                {"log_c_down", st.log_c_down},
                {"p_up", st.p_up},
                {"p_down", st.p_down},
                {"zero_coupling", st.zero_coupling},
                {"beta_eff_dimless", st.beta_eff},
                {"beta_eff_per_joule", st.beta_eff_si},
                {"T_eff_kelvin", st.t_eff_kelvin}};
}

inline json regime_json(const RegimeReport& r) {
    return json{{"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3},
                {"r1_ok", r.r1_ok}, {"r2_ok", r.r2_ok}, {"r3_ok", r.r3_ok},
                {"pass", r.pass()}, {"notes", r.notes}};
}

inline json report_json(const ScenarioReport& rep) {
    json levels = json::array();
    for (const auto& lv : rep.levels) {
        levels.push_back(json{{"n", lv.n},
                              {"E_dimless", lv.e_dimless},
                              {"E_joule", lv.e_si},
                              {"zbar_dimless", lv.zbar_dimless},
                              {"beta_bar_per_joule", lv.beta_bar_si},
                              {"occupation", lv.occupation}});
    }
    json relax;
    relax["enabled"] = rep.relax.enabled;
    if (rep.relax.enabled) {
        json labels = json::array();
        for (const auto& [n, sigma] : rep.relax.labels) {
            labels.push_back(json{{"level", n}, {"sigma", sigma}});
        }
        relax["model"] = rep.relax.kind == RateKind::metropolis ? "metropolis" : "heat_bath";
        relax["gamma0_per_second"] = rep.relax.gamma0;
        relax["dt_seconds"] = rep.relax.dt;
        relax["labels"] = labels;
        relax["kl_to_gibbs"] = rep.relax.kl;
        relax["stationary"] = rep.relax.stationary;
        relax["final_gap_linf"] = rep.relax.stationary_gap_linf;
        relax["t_final_seconds"] = rep.relax.times.empty() ? 0.0 : rep.relax.times.back();
    }

    json j{{"scenario", rep.scenario},
           {"frame", json{{"a", rep.config.a},
                          {"beta_a_per_joule", rep.beta_a_si},
                          {"T_a_kelvin", rep.t_a_kelvin}}},
           {"scales", json{{"length_unit_m", rep.l_star},
                           {"energy_unit_J", rep.e_star},
                           {"eta", rep.eta},
                           {"b", rep.b}}},
           {"coupling", json{{"omega_rad_per_s", rep.omega}, {"w_dimless", rep.w}}},
           {"regime", regime_json(rep.regime)},
           {"levels", levels},
           {"spin_state", spin_state_json(rep.spin_pert)},
           {"diagnostics", json{{"ground_log_weight_gap", rep.ground_log_weight_gap},
                                {"ground_occupation", rep.ground_occupation},
                                {"beta_offset_rel", rep.beta_offset_rel},
                                {"single_level_thermal", rep.single_level_thermal}}},
           {"relaxation", relax},
           {"notes", rep.notes}};
    if (rep.exact_computed) {
        j["spin_state_exact"] = spin_state_json(rep.spin_exact);
        j["diagnostics"]["pert_exact_rel_diff"] = rep.pert_exact_rel_diff;
    }
    if (rep.scenario == "double_well") {
        j["double_well"] = json{{"branch", to_string(rep.branch)},
                                {"suppression_exponent", rep.suppression_exponent},
                                {"beta_left_per_joule", rep.beta_left_si},
                                {"beta_right_per_joule", rep.beta_right_si},
                                {"beta_ratio", rep.beta_lr_ratio},
                                {"right_occupation", rep.right_occupation}};
    }
    return j;
}

struct RunManifest {
    std::string subcommand;
    std::string config_text; // canonical form; empty for config-free commands
    std::uint64_t seed = 0;
    bool regime_pass = true;
    std::vector<std::string> outputs;
};

inline json manifest_json(const RunManifest& m) {
    const auto k = codata2018();
    return json{{"tool", "unruh_lab"},
                {"version", version_string},
                {"timestamp_utc", utc_timestamp()},
                {"subcommand", m.subcommand},
                {"constants", json{{"hbar", k.hbar},
                                   {"c", k.c},
                                   {"k_B", k.k_B},
                                   {"m_e", k.m_e},
                                   {"e", k.e}}},
                {"seed", m.seed},
                {"regime_pass", m.regime_pass},
                {"config", m.config_text},
                {"outputs", m.outputs}};
}

// Writes the standard output set for one scenario run; returns written names.
inline std::vector<std::string> emit_scenario(const ScenarioReport& rep,
                                              const std::filesystem::path& dir,
                                              const std::string& format,
                                              const std::string& subcommand) {
    if (format != "csv" && format != "json") {
        throw ValidationError("emit: format must be csv or json");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    std::vector<std::string> written;
    if (format == "csv") {
        write_spectrum_csv(dir / "spectrum.csv", rep);
        written.push_back("spectrum.csv");
        if (!rep.states.empty()) {
            write_states_csv(dir / "states.csv", rep);
            written.push_back("states.csv");
        }
        if (rep.relax.enabled) {
            write_relax_csv(dir / "relax.csv", rep);
            written.push_back("relax.csv");
        }
    }
    {
        auto out = report_detail::open_out(dir / "report.json");
        out << report_json(rep).dump(2) << '\n';
        written.push_back("report.json");
    }
    RunManifest m;
    m.subcommand = subcommand;
    m.config_text = serialize_config(rep.config);
    m.seed = rep.config.seed;
    m.regime_pass = rep.regime.pass();
    m.outputs = written;
    {
        auto out = report_detail::open_out(dir / "manifest.json");
        out << manifest_json(m).dump(2) << '\n';
    }
    written.push_back("manifest.json");
    return written;
}

} // namespace unruh

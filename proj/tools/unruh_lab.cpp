// unruh_lab: command-line front end. Subcommands run the configured pipelines
// and emit CSV/JSON artifacts into an output directory (--out, else
// UNRUH_LAB_OUT, else ./out).
//
// Exit codes: 0 success, 1 computation/regime failure, 2 usage or config error.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unruh/unruh.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    bool strict_regime = false;
};

fs::path resolve_out_dir(const CommonOpts& o) {
    if (!o.out_dir.empty()) return o.out_dir;
    if (const char* env = std::getenv("UNRUH_LAB_OUT"); env && *env) return env;
    return "out";
}

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_config) {
    auto* c = cmd->add_option("--config", o.config_path, "config file (TOML subset)");
    if (needs_config) c->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "RNG seed (reserved; recorded in manifest)");
    cmd->add_flag("--strict-regime", o.strict_regime,
                  "escalate near-threshold regime warnings to errors");
}

unruh::ScenarioConfig load_config(const CommonOpts& o) {
    auto cfg = unruh::parse_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.strict_regime) cfg.strict_regime = true;
    return cfg;
}

void print_summary(const unruh::ScenarioReport& rep) {
    std::cout << rep.scenario << ": T_a = " << unruh::fmt_g17(rep.t_a_kelvin)
              << " K";
    if (!rep.spin_pert.zero_coupling) {
        std::cout << ", T_eff = " << unruh::fmt_g17(rep.spin_pert.t_eff_kelvin)
                  << " K, beta_eff/beta_a - 1 = "
                  << unruh::fmt_g17(rep.spin_pert.beta_eff_si / rep.beta_a_si - 1.0);
    } else {
        std::cout << ", zero coupling (spin state maximally mixed)";
    }
    if (rep.branch != unruh::WellBranch::none) {
        std::cout << ", branch = " << unruh::to_string(rep.branch);
    }
    std::cout << '\n';
}

int run_scenario_command(const CommonOpts& o, const std::string& sub,
                         std::optional<unruh::PotentialKind> expect_kind) {
    auto cfg = load_config(o);
    if (sub == "spin-state") {
        cfg.relax_enabled = false;
        cfg.emit_states = false;
    }
    if (sub == "relax") cfg.relax_enabled = true;
    if (expect_kind && cfg.kind != *expect_kind) {
        throw unruh::ValidationError("config potential kind does not match subcommand");
    }
    const auto rep = unruh::run_scenario(cfg);
    const auto dir = resolve_out_dir(o);
    const auto files = unruh::emit_scenario(rep, dir, o.format, sub);
    print_summary(rep);
    std::cout << "wrote " << files.size() << " files to " << dir.string() << '\n';
    return 0;
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(unruh::config_detail::parse_float(tok, "--values"));
    }
    return out;
}

int run_sweep(const CommonOpts& o, const std::string& axis_name,
              const std::string& values_text) {
    auto cfg = load_config(o);
    cfg.emit_states = false;
    cfg.relax_enabled = false;
    const auto axis = unruh::sweep_axis_from_string(axis_name);
    const auto values = parse_value_list(values_text);
    const auto sw = unruh::sweep(cfg, axis, values);

    const auto dir = resolve_out_dir(o);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw unruh::IoError("cannot create output directory " + dir.string());
    unruh::write_sweep_csv(dir / "sweep.csv", sw);

    std::vector<std::string> written{"sweep.csv"};
    std::size_t next_report = 0;
    for (const auto& row : sw.rows) {
        if (row.status == "ok") {
            const auto& rep = sw.reports[next_report++];
            const std::string name = "report_" + std::to_string(row.index) + ".json";
            std::ofstream out(dir / name);
            if (!out) throw unruh::IoError("cannot write " + name);
            out << unruh::report_json(rep).dump(2) << '\n';
            written.push_back(name);
        }
    }
    unruh::RunManifest m;
    m.subcommand = "sweep";
    m.config_text = unruh::serialize_config(cfg);
    m.seed = cfg.seed;
    m.outputs = written;
    {
        std::ofstream out(dir / "manifest.json");
        if (!out) throw unruh::IoError("cannot write manifest.json");
        out << unruh::manifest_json(m).dump(2) << '\n';
    }
    std::size_t ok = 0;
    for (const auto& row : sw.rows) ok += row.status == "ok";
    std::cout << "sweep over " << unruh::to_string(axis) << ": " << ok << "/"
              << sw.rows.size() << " points ok; wrote " << written.size() + 1
              << " files to " << dir.string() << '\n';
    return 0;
}

int run_kinematics(const CommonOpts& o, double a, const std::vector<double>& zs,
                   double t) {
    unruh::RindlerFrame frame(a);
    std::ostringstream table;
    table << "z_meters,lapse,local_acceleration,proper_time_seconds,beta_local_per_joule\n";
    for (double z : zs) {
        table << unruh::fmt_g17(z) << ',' << unruh::fmt_g17(unruh::lapse(frame, z)) << ','
              << unruh::fmt_g17(unruh::local_acceleration(frame, z)) << ','
              << unruh::fmt_g17(unruh::proper_time(frame, z, t)) << ','
              << unruh::fmt_g17(unruh::local_inverse_temperature(frame, z)) << '\n';
    }
    std::cout << "# a = " << unruh::fmt_g17(a)
              << " m/s^2, T_a = " << unruh::fmt_g17(unruh::unruh_temperature(frame))
              << " K, beta_a = " << unruh::fmt_g17(unruh::unruh_beta(frame)) << " 1/J\n"
              << table.str();
    if (!o.out_dir.empty() || std::getenv("UNRUH_LAB_OUT")) {
        const auto dir = resolve_out_dir(o);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw unruh::IoError("cannot create output directory " + dir.string());
        std::ofstream out(dir / "kinematics.csv");
        if (!out) throw unruh::IoError("cannot write kinematics.csv");
        out << table.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"accelerated-frame thermometry lab"};
    app.require_subcommand(1);

    CommonOpts o_spectrum, o_spin, o_relax, o_ext, o_dbl, o_sweep, o_kin;

    auto* kin = app.add_subcommand("kinematics", "frame maps and temperature fields");
    double kin_a = 2.5e20, kin_t = 0.0;
    std::vector<double> kin_z{0.0};
    kin->add_option("--a", kin_a, "proper acceleration at z = 0 [m/s^2]")->required();
    kin->add_option("--z", kin_z, "probe positions [m]")->delimiter(',');
    kin->add_option("--t", kin_t, "coordinate time [s]");
    kin->add_option("--out", o_kin.out_dir, "output directory");

    auto* spec = app.add_subcommand("spectrum", "spatial levels and states");
    add_common(spec, o_spectrum, true);
    auto* spin = app.add_subcommand("spin-state", "reduced spin thermal state");
    add_common(spin, o_spin, true);
    auto* relax = app.add_subcommand("relax", "master-equation relaxation");
    add_common(relax, o_relax, true);

    auto* scenario = app.add_subcommand("scenario", "full pipelines");
    scenario->require_subcommand(1);
    auto* ext = scenario->add_subcommand("extended-well", "single tilted hard-wall well");
    add_common(ext, o_ext, true);
    auto* dbl = scenario->add_subcommand("double-well", "two wells, branch-resolved");
    add_common(dbl, o_dbl, true);

    auto* sw = app.add_subcommand("sweep", "one-axis parameter sweep");
    add_common(sw, o_sweep, true);
    std::string sweep_axis, sweep_values;
    sw->add_option("--axis", sweep_axis, "a, L, l, B or E_right0")->required();
    sw->add_option("--values", sweep_values, "comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (kin->parsed()) return run_kinematics(o_kin, kin_a, kin_z, kin_t);
        if (spec->parsed()) return run_scenario_command(o_spectrum, "spectrum", {});
        if (spin->parsed()) return run_scenario_command(o_spin, "spin-state", {});
        if (relax->parsed()) return run_scenario_command(o_relax, "relax", {});
        if (ext->parsed()) {
            return run_scenario_command(o_ext, "scenario extended-well",
                                        unruh::PotentialKind::infinite_well);
        }
        if (dbl->parsed()) {
            return run_scenario_command(o_dbl, "scenario double-well",
                                        unruh::PotentialKind::double_well);
        }
        if (sw->parsed()) return run_sweep(o_sweep, sweep_axis, sweep_values);
    } catch (const unruh::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const unruh::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const unruh::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        // missing/unreadable config is a usage problem; failed result writes are not
        const std::string msg = e.what();
        return msg.find("parse_config") != std::string::npos ? 2 : 1;
    } catch (const unruh::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return 1;
    } catch (const unruh::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

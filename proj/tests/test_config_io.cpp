#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "unruh/config.hpp"
#include "unruh/numerics.hpp"
#include "unruh/report.hpp"
#include "unruh/scenario.hpp"

#include "oracle_values.hpp"

using namespace unruh;
using Catch::Matchers::ContainsSubstring;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("unruh_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

ScenarioConfig small_extended() {
    ScenarioConfig c;
    c.a = oracle::a_ref;
    c.grid_n = 801;
    c.k_levels = 3;
    c.compute_exact = false;
    c.relax_samples = 20;
    c.seed = 11;
    return c;
}

} // namespace

TEST_CASE("config text parses every section") {
    const std::string text = R"(
# full schema exercise
[frame]
a = 2.5e20

[particle]
mass = 9.1093837015e-31
charge = -1.602176634e-19

[coupling]
B = 0.5    # tesla

[potential]
kind = "double_well"
L = 1e-7
l = 1e-6
E_left0 = 0.0
E_right0 = -1e-22
cancel_tilt_offset = false
origin = 0.0
file = "runs#1/table.csv"  # the hash inside quotes is data
include_tilt = true
single_grid = false

[grid]
n = 2001

[levels]
k = 4
compute_exact = true
degeneracy_threshold = 1e-3

[relaxation]
enabled = true
model = "heat_bath"
gamma0 = 2e6
t_max_gamma = 30
dt_safety = 0.05
samples = 100

[regime]
r1_max = 1e-3
r2_max = 1e-2
r3_max = 1e-3
strict = true

[output]
emit_states = false
seed = 42
)";
    const auto c = parse_config_text(text);

    ScenarioConfig want;
    want.a = 2.5e20;
    want.mass = 9.1093837015e-31;
    want.charge = -1.602176634e-19;
    want.b_field = 0.5;
    want.kind = PotentialKind::double_well;
    want.width = 1e-7;
    want.separation = 1e-6;
    want.floor_right = -1e-22;
    want.table_path = "runs#1/table.csv";
    want.grid_n = 2001;
    want.k_levels = 4;
    want.rate_kind = RateKind::heat_bath;
    want.gamma0 = 2e6;
    want.t_max_gamma = 30.0;
    want.relax_samples = 100;
    want.strict_regime = true;
    want.emit_states = false;
    want.seed = 42;
    CHECK(c == want);
}

TEST_CASE("omega overrides the field route") {
    const std::string text = R"(
[frame]
a = 1e20
[coupling]
omega = 87941000538.60815
[potential]
kind = "infinite_well"
L = 1e-7
)";
    const auto c = parse_config_text(text);
    CHECK(c.omega == 87941000538.60815);
    CHECK(c.a == 1e20);
    CHECK(c.kind == PotentialKind::infinite_well);
}

TEST_CASE("serialized configs parse back to the identical value") {
    CHECK(parse_config_text(serialize_config(ScenarioConfig{})) == ScenarioConfig{});

    ScenarioConfig c;
    c.a = 1.7e19;
    c.omega = 1.0 / 3.0;
    c.kind = PotentialKind::double_well;
    c.width = 0.1 * oracle::l_star; // awkward mantissas on purpose
    c.separation = 1e-6;
    c.floor_right = -1e-22;
    c.cancel_tilt_offset = true;
    c.origin = -2.5e-8;
    c.rate_kind = RateKind::heat_bath;
    c.gamma0 = 3.3333333333333331e6;
    c.dt_safety = 0.025;
    c.strict_regime = true;
    c.emit_states = false;
    c.seed = 9000000000000000001ull;
    const auto back = parse_config_text(serialize_config(c));
    CHECK(back == c);

    ScenarioConfig tab;
    tab.kind = PotentialKind::tabulated;
    tab.table_path = "table.csv";
    CHECK(parse_config_text(serialize_config(tab)) == tab);
}

TEST_CASE("config errors carry origin, line, and reason") {
    auto parse = [](const std::string& t) { return parse_config_text(t, "cfg"); };

    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[nope]\nx = 1\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("unknown section")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\nb = 2\n[potential]\nkind = \"infinite_well\"\nL = 1e-7\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("unknown key 'b'")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1\na = 2\n"), ParseError,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("cfg:3: duplicate key 'a'")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[coupling]\nB = 1\nomega = 1\n"
                               "[potential]\nkind = \"infinite_well\"\nL = 1e-7\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("B or omega")));
    CHECK_THROWS_MATCHES(parse("[potential]\nkind = \"infinite_well\"\nL = 1e-7\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("missing required [frame] a")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("missing required [potential] kind")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[potential]\nkind = \"infinite_well\"\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("missing required [potential] L")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = fast\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("not a number")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[potential]\nkind = \"infinite_well\"\n"
                               "L = 1e-7\ninclude_tilt = yes\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("not true/false")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[grid]\nn = 2.5\n"
                               "[potential]\nkind = \"infinite_well\"\nL = 1e-7\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("not an integer")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[potential]\nkind = infinite_well\nL = 1e-7\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("quoted string")));
    CHECK_THROWS_MATCHES(parse("a = 1e20\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("outside any section")));
    CHECK_THROWS_MATCHES(parse("[frame\na = 1e20\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("malformed section header")));
    CHECK_THROWS_MATCHES(parse("[frame]\na =\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("empty value")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[potential]\nkind = \"staircase\"\nL = 1\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("staircase")));
    CHECK_THROWS_MATCHES(parse("[frame]\na = 1e20\n[potential]\nkind = \"infinite_well\"\n"
                               "L = 1e-7\n[relaxation]\nmodel = \"glauber\"\n"),
                         ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("glauber")));

    CHECK_THROWS_AS(parse("[frame]\na = 1e20\n[coupling]\nomega = -2\n"
                          "[potential]\nkind = \"infinite_well\"\nL = 1e-7\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse("[frame]\na = 1e20\n[potential]\nkind = \"infinite_well\"\n"
                          "L = 1e-7\n[output]\nseed = -4\n"),
                    ValidationError);
    // schema-valid but physically inconsistent values are rejected too
    CHECK_THROWS_AS(parse("[frame]\na = -1e20\n[potential]\nkind = \"infinite_well\"\nL = 1e-7\n"),
                    ValidationError);
}

TEST_CASE("config files are read from disk") {
    const auto dir = fresh_dir("cfg");
    const auto path = dir / "run.toml";
    {
        std::ofstream out(path);
        out << "[frame]\na = 2.5e20\n[potential]\nkind = \"infinite_well\"\nL = 1e-7\n";
    }
    const auto c = parse_config(path.string());
    CHECK(c.a == 2.5e20);

    CHECK_THROWS_MATCHES(parse_config((dir / "absent.toml").string()), IoError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("parse_config")));
    fs::remove_all(dir);
}

TEST_CASE("scenario outputs land on disk as csv plus json") {
    auto cfg = small_extended();
    const auto rep = run_scenario(cfg);
    const auto dir = fresh_dir("emit_csv");

    const auto written = emit_scenario(rep, dir, "csv", "extended-well");
    REQUIRE(written.size() == 5);
    CHECK(written[0] == "spectrum.csv");
    CHECK(written[1] == "states.csv");
    CHECK(written[2] == "relax.csv");
    CHECK(written[3] == "report.json");
    CHECK(written[4] == "manifest.json");
    for (const auto& f : written) CHECK(fs::exists(dir / f));

    CHECK(first_line(dir / "spectrum.csv") ==
          "n,E_dimless,E_joule,zbar_dimless,beta_bar_per_joule");
    CHECK(count_lines(dir / "spectrum.csv") == 1 + rep.levels.size());
    CHECK(count_lines(dir / "states.csv") ==
          1 + rep.states.size() * static_cast<std::size_t>(cfg.grid_n));
    CHECK(count_lines(dir / "relax.csv") ==
          1 + rep.relax.times.size() * rep.relax.stationary.size());

    // report is valid json with the full block structure
    std::ifstream jin(dir / "report.json");
    const auto j = json::parse(jin);
    CHECK(j["scenario"] == "extended_well");
    CHECK(j["frame"]["a"].get<double>() == cfg.a);
    CHECK(j["levels"].size() == rep.levels.size());
    CHECK(j["diagnostics"]["single_level_thermal"].get<bool>());
    CHECK(j["spin_state"]["p_down"].get<double>() > 0.5);
    CHECK(j["regime"]["pass"].get<bool>());
    CHECK(j["relaxation"]["enabled"].get<bool>());
    CHECK(j["relaxation"]["labels"].size() == 6);

    // manifest pins constants and reproduces the exact config
    std::ifstream min(dir / "manifest.json");
    const auto m = json::parse(min);
    CHECK(m["tool"] == "unruh_lab");
    CHECK(m["subcommand"] == "extended-well");
    CHECK(m["seed"].get<std::uint64_t>() == cfg.seed);
    CHECK(m["regime_pass"].get<bool>());
    CHECK(m["outputs"].size() == written.size() - 1);
    const auto back = parse_config_text(m["config"].get<std::string>());
    CHECK(back == rep.config);

    const auto ts = m["timestamp_utc"].get<std::string>();
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts.back() == 'Z');

    // json-only mode writes no csv
    const auto dir2 = fresh_dir("emit_json");
    const auto written2 = emit_scenario(rep, dir2, "json", "extended-well");
    REQUIRE(written2.size() == 2);
    CHECK_FALSE(fs::exists(dir2 / "spectrum.csv"));
    CHECK(fs::exists(dir2 / "report.json"));

    CHECK_THROWS_AS(emit_scenario(rep, dir2, "yaml", "extended-well"), ValidationError);
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("double well report json carries the branch block") {
    ScenarioConfig cfg;
    cfg.a = oracle::a_ref;
    cfg.kind = PotentialKind::double_well;
    cfg.width = 1e-7;
    cfg.separation = 1e-6;
    cfg.grid_n = 801;
    cfg.k_levels = 3;
    cfg.relax_enabled = false;
    cfg.emit_states = false;

    const auto rep = run_scenario(cfg);
    const auto j = report_json(rep);
    CHECK(j["double_well"]["branch"] == "boltzmann");
    CHECK(j["double_well"]["right_occupation"].get<double>() == 0.0);
    CHECK(j["double_well"]["beta_ratio"].get<double>() > 1.0);
    CHECK(j.contains("spin_state_exact"));
    CHECK(j["diagnostics"].contains("pert_exact_rel_diff"));

    // the full pipeline is deterministic down to the serialized report
    const auto rep2 = run_scenario(cfg);
    CHECK(report_json(rep2).dump() == j.dump());
}

TEST_CASE("sweep csv keeps one line per row including failures") {
    ScenarioConfig base;
    base.a = oracle::a_ref;
    base.grid_n = 801;
    base.k_levels = 2;
    base.compute_exact = false;
    base.relax_enabled = false;
    base.emit_states = false;

    const auto sw = sweep(base, SweepAxis::width, {1e-7, 1.0});
    const auto dir = fresh_dir("sweep");
    write_sweep_csv(dir / "sweep.csv", sw);

    REQUIRE(count_lines(dir / "sweep.csv") == 1 + sw.rows.size());
    std::ifstream in(dir / "sweep.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("index,axis,value,status", 0) == 0);
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 10);
    }
    fs::remove_all(dir);
}

TEST_CASE("canonical float text is lossless") {
    SplitMix64 rng(0xfeedbeef);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.next_symmetric() * std::pow(10.0, (i % 60) - 30);
        const std::string s = fmt_g17(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    ScenarioConfig c;
    c.a = 2.5e20 * (1.0 + 3e-16); // off-anchor mantissa
    c.width = 1e-7 / 3.0;
    const auto back = parse_config_text(serialize_config(c));
    CHECK(back.a == c.a);
    CHECK(back.width == c.width);
}

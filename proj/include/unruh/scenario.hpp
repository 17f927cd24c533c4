#pragma once

// End-to-end pipelines: configured physical scenario -> spectra ->
// spin-resolved thermometry -> optional relaxation, with validity-regime
// guards up front. SI quantities cross into scaled units exactly once, here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unruh/constants.hpp"
#include "unruh/errors.hpp"
#include "unruh/grid.hpp"
#include "unruh/kinematics.hpp"
#include "unruh/potential.hpp"
#include "unruh/relaxation.hpp"
#include "unruh/scales.hpp"
#include "unruh/spectral.hpp"
#include "unruh/thermometry.hpp"

namespace unruh {

struct ScenarioConfig {
    // frame / particle / coupling
    double a = 2.5e20;              // [m/s^2]
    double mass = codata2018().m_e; // [kg]
    double charge = -codata2018().e;// [C] (sign irrelevant to |omega|)
    double b_field = 1.0;           // [T]; used when omega < 0
    double omega = -1.0;            // [rad/s]; >= 0 overrides b_field

    // potential (SI)
    PotentialKind kind = PotentialKind::infinite_well;
    double width = 1e-7;            // L [m]
    double separation = 0.0;        // l [m], left-edge offset of right well
    double floor_left = 0.0;        // [J]
    double floor_right = 0.0;       // [J]
    bool cancel_tilt_offset = false;// overrides floor_right with -m a l
    double origin = 0.0;            // left edge of left well [m]
    std::string table_path;        // tabulated potential (dimensionless CSV)
    bool include_tilt = true;
    bool single_grid = false;       // double well: brute-force one-grid solve

    // discretization / levels
    int grid_n = 20001;
    int k_levels = 8;
    bool compute_exact = true;      // exact-sector cross-check

    // relaxation
    bool relax_enabled = true;
    RateKind rate_kind = RateKind::metropolis;
    double gamma0 = 1e6;            // [1/s]
    double t_max_gamma = 50.0;      // horizon in units of 1/gamma0
    double dt_safety = 0.05;        // dt = dt_safety / max_exit_rate
    int relax_samples = 200;

    // guards / misc
    RegimeThresholds regime{};
    bool strict_regime = false;
    double degeneracy_threshold = 1e-3; // on b * |Delta E|
    bool emit_states = true;
    std::uint64_t seed = 0;         // reserved; recorded for reproducibility

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

inline void validate_config(const ScenarioConfig& c) {
    auto fail = [](const char* inv) { throw ValidationError(std::string("config: ") + inv); };
    if (!(c.a > 0.0)) fail("a > 0");
    if (!(c.mass > 0.0)) fail("mass > 0");
    if (!(c.b_field >= 0.0)) fail("B >= 0");
    if (!(c.width > 0.0)) fail("L > 0");
    if (c.kind == PotentialKind::double_well) {
        if (!(c.separation == 0.0 || c.separation > c.width)) {
            fail("l > L (disjoint wells) or l = 0 (merged)");
        }
        if (c.single_grid && !(c.separation > c.width)) fail("single_grid requires l > L");
    }
    if (c.kind == PotentialKind::tabulated && c.table_path.empty()) {
        fail("tabulated potential requires a file");
    }
    if (c.grid_n < 3) fail("grid n >= 3");
    if (c.k_levels < 1) fail("levels k >= 1");
    if (!(c.gamma0 > 0.0)) fail("gamma0 > 0");
    if (!(c.t_max_gamma > 0.0)) fail("t_max > 0");
    if (!(c.dt_safety > 0.0 && c.dt_safety <= 0.1)) fail("0 < dt_safety <= 0.1");
    if (c.relax_samples < 2) fail("relax samples >= 2");
    if (!(c.degeneracy_threshold > 0.0)) fail("degeneracy threshold > 0");
}

enum class WellBranch { none, symmetric_delocalized, boltzmann };

inline const char* to_string(WellBranch b) {
    switch (b) {
    case WellBranch::symmetric_delocalized: return "symmetric_delocalized";
    case WellBranch::boltzmann: return "boltzmann";
    default: return "single";
    }
}

// Choice of ground-state treatment for two candidate minima: below the
// threshold in b*|dE| the split is thermally invisible and the delocalized
// even combination is used; above it the localized states are Boltzmann
// weighted.
struct DegeneracyDecision {
    WellBranch branch;
    double log_weight_delta; // b * |E_right - E_left|
};

inline DegeneracyDecision degeneracy_resolve(double e_left, double e_right,
                                             double b, double threshold = 1e-3) {
    if (!(b > 0.0)) throw DomainError("degeneracy_resolve: b > 0 required");
    if (!(threshold > 0.0)) throw DomainError("degeneracy_resolve: threshold > 0 required");
    const double d = b * std::fabs(e_right - e_left);
    return {d < threshold ? WellBranch::symmetric_delocalized : WellBranch::boltzmann, d};
}

struct LevelSummary {
    int n = 0;
    double e_dimless = 0.0;
    double e_si = 0.0;          // [J]
    double zbar_dimless = 0.0;
    double beta_bar_si = 0.0;   // [1/J]
    double occupation = 0.0;    // spin-traced
};

struct StateRecord {
    int n = 0;
    std::vector<double> zeta; // global scaled coordinate
    std::vector<double> phi;
};

struct RelaxationSummary {
    bool enabled = false;
    RateKind kind = RateKind::metropolis;
    double gamma0 = 0.0;
    double dt = 0.0;
    std::vector<std::pair<int, int>> labels; // (spatial level, sigma) per index
    std::vector<double> times;               // [s]
    std::vector<std::vector<double>> populations;
    std::vector<double> kl;                  // divergence to Gibbs per sample
    std::vector<double> stationary;
    double stationary_gap_linf = 0.0;        // |p(t_end) - Gibbs|_inf
};

struct ScenarioReport {
    ScenarioConfig config;
    std::string scenario; // "extended_well" | "double_well"

    // frame and scales
    double beta_a_si = 0.0;   // [1/J]
    double t_a_kelvin = 0.0;  // [K]
    double l_star = 0.0;      // [m]
    double e_star = 0.0;      // [J]
    double eta = 0.0;
    double b = 0.0;
    double omega = 0.0;       // [rad/s]
    double w = 0.0;           // scaled coupling

    RegimeReport regime;
    std::vector<std::string> notes;

    std::vector<LevelSummary> levels;
    std::vector<StateRecord> states;

    SpinThermalState spin_pert;
    SpinThermalState spin_exact;
    bool exact_computed = false;
    double pert_exact_rel_diff = quiet_nan; // on beta_eff

    double ground_log_weight_gap = quiet_nan; // b * (E_1 - E_0)
    double ground_occupation = quiet_nan;
    double beta_offset_rel = quiet_nan;       // beta_bar_0 / beta_a - 1
    bool single_level_thermal = false;

    // double well only
    WellBranch branch = WellBranch::none;
    double suppression_exponent = quiet_nan;  // b * (E_Rg - E_Lg), signed
    double beta_left_si = quiet_nan;
    double beta_right_si = quiet_nan;
    double beta_lr_ratio = quiet_nan;
    double right_occupation = quiet_nan;

    RelaxationSummary relax;
};

namespace scenario_detail {

inline double resolve_omega(const ScenarioConfig& c) {
    if (c.omega >= 0.0) return c.omega;
    return SpinCoupling::from_field(c.b_field, c.mass, c.charge).omega;
}

inline void run_regime_gate(const ScenarioConfig& c, const RindlerFrame& f,
                            double z_extent, double omega, ScenarioReport& rep) {
    rep.regime = regime_check(f, c.mass, z_extent, omega, c.regime);
    for (const auto& n : rep.regime.notes) rep.notes.push_back("regime: " + n);
    if (!rep.regime.pass()) {
        throw RegimeError("validity regime violated: r1=" + std::to_string(rep.regime.r1) +
                          " r2=" + std::to_string(rep.regime.r2) +
                          " r3=" + std::to_string(rep.regime.r3));
    }
    if (c.strict_regime && !rep.regime.notes.empty()) {
        throw RegimeError("strict regime: " + rep.regime.notes.front());
    }
}

inline void fill_frame_block(const ScaleSystem& s, double omega, ScenarioReport& rep) {
    rep.beta_a_si = unruh_beta(s.frame);
    rep.t_a_kelvin = unruh_temperature(s.frame);
    rep.l_star = s.length_unit;
    rep.e_star = s.energy_unit;
    rep.eta = s.eta;
    rep.b = s.b;
    rep.omega = omega;
    rep.w = s.coupling_dimless(omega);
}

// Combined sector levels sorted by energy, for relaxation.
struct CombinedLevels {
    std::vector<double> energies;
    std::vector<std::pair<int, int>> labels; // (spatial n, sigma)
};

inline CombinedLevels combine_sectors(const LevelSet& ls) {
    CombinedLevels out;
    for (std::size_t n = 0; n < ls.size(); ++n) {
        out.energies.push_back(ls.e_up[n]);
        out.labels.emplace_back(static_cast<int>(n), +1);
        out.energies.push_back(ls.e_down[n]);
        out.labels.emplace_back(static_cast<int>(n), -1);
    }
    std::vector<std::size_t> order(out.energies.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return out.energies[i] < out.energies[j];
    });
    CombinedLevels sorted;
    for (std::size_t i : order) {
        sorted.energies.push_back(out.energies[i]);
        sorted.labels.push_back(out.labels[i]);
    }
    return sorted;
}

inline RelaxationSummary run_relaxation(const ScenarioConfig& c, const LevelSet& ls,
                                        double b) {
    RelaxationSummary out;
    out.enabled = true;
    out.kind = c.rate_kind;
    out.gamma0 = c.gamma0;
    const auto combined = combine_sectors(ls);
    out.labels = combined.labels;

    const auto rates = build_rates(combined.energies, b,
                                   RateModel{c.rate_kind, c.gamma0});
    const double dt = c.dt_safety / rates.max_exit_rate;
    out.dt = dt;
    PopulationState p0;
    p0.t = 0.0;
    p0.p.assign(combined.energies.size(), 1.0 / static_cast<double>(combined.energies.size()));

    const auto traj = evolve(rates, p0, dt, c.t_max_gamma / c.gamma0, c.relax_samples);
    out.times = traj.times;
    out.populations = traj.populations;

    const auto pi = stationary_distribution(rates);
    out.stationary = pi.p;
    out.kl = kl_to_gibbs(traj, rates);
    for (std::size_t i = 0; i < pi.p.size(); ++i) {
        out.stationary_gap_linf = std::fmax(
            out.stationary_gap_linf, std::fabs(traj.populations.back()[i] - pi.p[i]));
    }
    return out;
}

inline void fill_spin_blocks(const ScenarioConfig& c, const ScaleSystem& s,
                             const LevelSet& pert, const LevelSet* exact,
                             ScenarioReport& rep) {
    const auto coeff = spin_coefficients(pert, s.b);
    rep.spin_pert = reduced_spin_state(coeff, pert.w, s);
    if (exact) {
        const auto ce = spin_coefficients(*exact, s.b);
        rep.spin_exact = reduced_spin_state(ce, exact->w, s);
        rep.exact_computed = true;
        if (!rep.spin_pert.zero_coupling && !rep.spin_exact.zero_coupling) {
            rep.pert_exact_rel_diff =
                std::fabs(rep.spin_exact.beta_eff - rep.spin_pert.beta_eff) /
                std::fabs(rep.spin_pert.beta_eff);
        }
    }

    const auto occ = level_occupations(pert, s.b);
    for (std::size_t n = 0; n < rep.levels.size() && n < occ.size(); ++n) {
        rep.levels[n].occupation = occ[n];
    }
    rep.ground_occupation = occ.empty() ? quiet_nan : occ[0];
    if (pert.e_space.size() >= 2) {
        rep.ground_log_weight_gap = s.b * (pert.e_space[1] - pert.e_space[0]);
    }
    if (!pert.zbar.empty()) {
        const double beta_bar0 = level_mean_beta(s, pert.zbar[0]);
        rep.beta_offset_rel = beta_bar0 / rep.beta_a_si - 1.0;
        if (!rep.spin_pert.zero_coupling) {
            rep.single_level_thermal =
                rep.ground_occupation >= 1.0 - 1e-12 &&
                std::fabs(rep.spin_pert.beta_eff_si / beta_bar0 - 1.0) <= 1e-12;
        }
    }
    if (c.relax_enabled) {
        rep.relax = run_relaxation(c, pert, s.b);
    }
}

} // namespace scenario_detail

// Single hard-wall well [origin, origin + L] with the linear tilt, the full
// thermometry chain, and optional relaxation.
inline ScenarioReport run_extended_well(const ScenarioConfig& cfg) {
    validate_config(cfg);
    if (cfg.kind != PotentialKind::infinite_well &&
        cfg.kind != PotentialKind::tabulated) {
        throw ValidationError("run_extended_well: potential kind must be "
                              "infinite_well or tabulated");
    }

    ScenarioReport rep;
    rep.config = cfg;
    rep.scenario = "extended_well";

    RindlerFrame frame(cfg.a);
    const double omega = scenario_detail::resolve_omega(cfg);
    const ScaleSystem scales = make_scales(frame, cfg.mass);
    scenario_detail::fill_frame_block(scales, omega, rep);

    const double z_lo = cfg.origin;
    const double z_hi = cfg.origin + cfg.width;
    PotentialSpec pspec;
    Grid grid(scales.to_dimless_length(z_lo), scales.to_dimless_length(z_hi), cfg.grid_n);
    if (cfg.kind == PotentialKind::tabulated) {
        pspec = load_tabulated_potential(cfg.table_path);
        grid = Grid(pspec.samples.front().first, pspec.samples.back().first, cfg.grid_n);
    } else {
        pspec = PotentialSpec::infinite_well(scales.to_dimless_length(cfg.width),
                                             scales.to_dimless_energy(cfg.floor_left),
                                             scales.to_dimless_length(cfg.origin));
    }
    // tabulated ranges carry their own extent; the configured width is only
    // meaningful for the hard-wall well
    const double extent = cfg.kind == PotentialKind::tabulated
        ? std::fmax(std::fabs(scales.to_si_length(grid.zeta_min)),
                    std::fabs(scales.to_si_length(grid.zeta_max)))
        : std::fmax(std::fabs(z_lo), std::fabs(z_hi));
    scenario_detail::run_regime_gate(cfg, frame, extent, omega, rep);
    const auto pot = build_potential(pspec, grid);
    const auto op = assemble_hamiltonian(pot, grid, cfg.include_tilt);
    const auto spectrum = lowest_eigenpairs(op, cfg.k_levels);

    const double w = scales.coupling_dimless(omega);
    const auto pert = perturbed_levels(spectrum, w, scales.eta);

    for (std::size_t n = 0; n < spectrum.energies.size(); ++n) {
        LevelSummary lv;
        lv.n = static_cast<int>(n);
        lv.e_dimless = spectrum.energies[n];
        lv.e_si = scales.to_si_energy(spectrum.energies[n]);
        lv.zbar_dimless = spectrum.mean_positions[n];
        lv.beta_bar_si = level_mean_beta(scales, spectrum.mean_positions[n]);
        rep.levels.push_back(lv);
    }
    if (cfg.emit_states) {
        for (std::size_t n = 0; n < spectrum.states.size(); ++n) {
            StateRecord sr;
            sr.n = static_cast<int>(n);
            sr.zeta.reserve(grid.n);
            for (int i = 0; i < grid.n; ++i) sr.zeta.push_back(grid.point(i));
            sr.phi = spectrum.states[n];
            rep.states.push_back(std::move(sr));
        }
    }

    LevelSet exact;
    const LevelSet* exact_ptr = nullptr;
    if (cfg.compute_exact) {
        const auto up = exact_sector_spectrum(pot, grid, cfg.include_tilt, w,
                                              scales.eta, +1, cfg.k_levels);
        const auto dn = exact_sector_spectrum(pot, grid, cfg.include_tilt, w,
                                              scales.eta, -1, cfg.k_levels);
        exact = exact_levels(up, dn, w, scales.eta);
        exact_ptr = &exact;
    }
    scenario_detail::fill_spin_blocks(cfg, scales, pert, exact_ptr, rep);

    // consistency: mean-beta quadrature identity on the ground state
    if (!spectrum.states.empty()) {
        (void)mean_inverse_beta(spectrum.states[0], grid, scales);
    }
    return rep;
}

// Two hard-wall wells of equal width: left at [0, L], right at [l, l + L]
// (SI, before the origin shift). Default route solves each well on its own
// grid and composes energies/positions with the exact offsets
// E -> E + floor + l~ and zbar -> zbar + l~; the single-grid route is kept
// for validation at modest separations.
inline ScenarioReport run_double_well(const ScenarioConfig& cfg) {
    validate_config(cfg);
    if (cfg.kind != PotentialKind::double_well) {
        throw ValidationError("run_double_well: potential kind must be double_well");
    }

    ScenarioReport rep;
    rep.config = cfg;
    rep.scenario = "double_well";

    RindlerFrame frame(cfg.a);
    const double omega = scenario_detail::resolve_omega(cfg);
    const ScaleSystem scales = make_scales(frame, cfg.mass);
    scenario_detail::fill_frame_block(scales, omega, rep);

    // The single-grid solve linearizes across the whole span, so the patch
    // constraint covers origin..origin+l+L. The composite route solves each
    // well in its own patch and carries the offset through exact lapse
    // identities, so only the per-well extent is constrained; a wide span is
    // reported as a note instead.
    const double z_hi = cfg.origin + cfg.separation + cfg.width;
    const double span_extent = std::fmax(std::fabs(cfg.origin), std::fabs(z_hi));
    const double patch_extent = cfg.single_grid
        ? span_extent
        : std::fmax(std::fmax(std::fabs(cfg.origin),
                              std::fabs(cfg.origin + cfg.width)),
                    cfg.width);
    scenario_detail::run_regime_gate(cfg, frame, patch_extent, omega, rep);
    if (!cfg.single_grid) {
        const double c_si = frame.k.c;
        const double r2_span = cfg.a * span_extent / (c_si * c_si);
        if (r2_span > cfg.regime.r2_max) {
            rep.notes.push_back("regime: inter-well span has a*z/c^2 = " +
                                std::to_string(r2_span) +
                                "; offsets are handled per well, not linearized");
        }
    }

    const double lam = scales.to_dimless_length(cfg.width);       // well width
    const double sep = scales.to_dimless_length(cfg.separation);  // offset l~
    const double zeta0 = scales.to_dimless_length(cfg.origin);
    const double floor_l = scales.to_dimless_energy(cfg.floor_left);
    const double floor_r = cfg.cancel_tilt_offset
        ? -sep  // scaled m*a*l is exactly l~ (tilt slope 1)
        : scales.to_dimless_energy(cfg.floor_right);
    const double w = scales.coupling_dimless(omega);

    struct WellLevels {
        std::vector<double> e, zbar;
        std::vector<double> e_up, e_dn; // exact sectors, optional
        std::vector<int> src;           // 0 = left, 1 = right
    };
    WellLevels all;
    double e_left_ground = 0.0, e_right_ground = 0.0;
    double zbar_left_ground = 0.0, zbar_right_ground = 0.0;

    if (cfg.single_grid) {
        if (sep > 1e5) {
            throw GeometryError("run_double_well: single-grid solve limited to "
                                "l/l_star <= 1e5 (use the composite route)");
        }
        Grid grid(zeta0, zeta0 + sep + lam, cfg.grid_n);
        auto pspec = PotentialSpec::double_well(lam, sep, floor_l, floor_r);
        pspec.origin = zeta0;
        const auto pot = build_potential(pspec, grid);
        const auto op = assemble_hamiltonian(pot, grid, cfg.include_tilt);
        const auto spectrum = lowest_eigenpairs(op, cfg.k_levels);
        all.e = spectrum.energies;
        all.zbar = spectrum.mean_positions;
        all.src.assign(all.e.size(), -1);
        for (std::size_t n = 0; n < all.e.size(); ++n) {
            all.src[n] = all.zbar[n] < zeta0 + lam ? 0 : 1;
        }
        if (cfg.compute_exact) {
            const auto up = exact_sector_spectrum(pot, grid, cfg.include_tilt, w,
                                                  scales.eta, +1, cfg.k_levels);
            const auto dn = exact_sector_spectrum(pot, grid, cfg.include_tilt, w,
                                                  scales.eta, -1, cfg.k_levels);
            all.e_up = up.energies;
            all.e_dn = dn.energies;
        }
        // ground candidates per well, for branch decision and ratios
        bool have_l = false, have_r = false;
        for (std::size_t n = 0; n < all.e.size(); ++n) {
            if (all.src[n] == 0 && !have_l) {
                e_left_ground = all.e[n]; zbar_left_ground = all.zbar[n]; have_l = true;
            }
            if (all.src[n] == 1 && !have_r) {
                e_right_ground = all.e[n]; zbar_right_ground = all.zbar[n]; have_r = true;
            }
        }
        if (!have_l || !have_r) {
            throw ConvergenceError("run_double_well: requested levels do not cover "
                                   "both wells; increase k");
        }
        if (cfg.emit_states) {
            for (std::size_t n = 0; n < spectrum.states.size(); ++n) {
                StateRecord sr;
                sr.n = static_cast<int>(n);
                for (int i = 0; i < grid.n; ++i) sr.zeta.push_back(grid.point(i));
                sr.phi = spectrum.states[n];
                rep.states.push_back(std::move(sr));
            }
        }
    } else {
        // composite: one local solve per distinct well problem; both wells share
        // width and unit tilt slope, so a single local spectrum serves both.
        Grid local(0.0, lam, cfg.grid_n);
        const auto pspec = PotentialSpec::infinite_well(lam);
        const auto pot = build_potential(pspec, local);
        const auto op = assemble_hamiltonian(pot, local, cfg.include_tilt);
        const auto loc = lowest_eigenpairs(op, cfg.k_levels);

        const double off_l = zeta0;
        const double off_r = zeta0 + sep;
        for (std::size_t n = 0; n < loc.energies.size(); ++n) {
            all.e.push_back(loc.energies[n] + floor_l + (cfg.include_tilt ? off_l : 0.0));
            all.zbar.push_back(loc.mean_positions[n] + off_l);
            all.src.push_back(0);
            all.e.push_back(loc.energies[n] + floor_r + (cfg.include_tilt ? off_r : 0.0));
            all.zbar.push_back(loc.mean_positions[n] + off_r);
            all.src.push_back(1);
        }
        e_left_ground = all.e[0];
        zbar_left_ground = all.zbar[0];
        e_right_ground = all.e[1];
        zbar_right_ground = all.zbar[1];

        if (cfg.compute_exact) {
            auto sector = [&](int sigma, double off, double floor) {
                auto o = assemble_hamiltonian(pot, local, cfg.include_tilt);
                o = add_diagonal(std::move(o), [&, sigma](double zl) {
                    return sigma * w * (1.0 + scales.eta * (off + zl));
                });
                auto sp = lowest_eigenpairs(o, cfg.k_levels);
                for (auto& e : sp.energies) e += floor + (cfg.include_tilt ? off : 0.0);
                return sp.energies;
            };
            const auto lu = sector(+1, off_l, floor_l);
            const auto ld = sector(-1, off_l, floor_l);
            const auto ru = sector(+1, off_r, floor_r);
            const auto rd = sector(-1, off_r, floor_r);
            for (std::size_t n = 0; n < lu.size(); ++n) {
                all.e_up.push_back(lu[n]);
                all.e_dn.push_back(ld[n]);
                all.e_up.push_back(ru[n]);
                all.e_dn.push_back(rd[n]);
            }
        }
        if (cfg.emit_states) {
            int id = 0;
            for (int srcw = 0; srcw < 2; ++srcw) {
                const double off = srcw == 0 ? off_l : off_r;
                for (std::size_t n = 0; n < loc.states.size(); ++n) {
                    StateRecord sr;
                    sr.n = id++;
                    for (int i = 0; i < local.n; ++i) sr.zeta.push_back(off + local.point(i));
                    sr.phi = loc.states[n];
                    rep.states.push_back(std::move(sr));
                }
            }
        }
    }

    // sort the combined spatial levels (with any exact sector data) by energy
    {
        std::vector<std::size_t> order(all.e.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return all.e[i] < all.e[j];
        });
        WellLevels sorted;
        for (std::size_t i : order) {
            sorted.e.push_back(all.e[i]);
            sorted.zbar.push_back(all.zbar[i]);
            sorted.src.push_back(all.src[i]);
            if (!all.e_up.empty()) {
                sorted.e_up.push_back(all.e_up[i]);
                sorted.e_dn.push_back(all.e_dn[i]);
            }
        }
        if (!sorted.e_up.empty()) {
            std::sort(sorted.e_up.begin(), sorted.e_up.end());
            std::sort(sorted.e_dn.begin(), sorted.e_dn.end());
        }
        all = std::move(sorted);
    }

    const auto decision = degeneracy_resolve(e_left_ground, e_right_ground, scales.b,
                                             cfg.degeneracy_threshold);
    rep.branch = decision.branch;
    rep.suppression_exponent = scales.b * (e_right_ground - e_left_ground);
    rep.beta_left_si = level_mean_beta(scales, zbar_left_ground);
    rep.beta_right_si = level_mean_beta(scales, zbar_right_ground);
    rep.beta_lr_ratio = rep.beta_right_si / rep.beta_left_si;
    rep.notes.push_back(std::string("double well branch: ") + to_string(decision.branch));

    // effective level set for thermometry
    LevelSet pert;
    pert.provenance = LevelProvenance::perturbative;
    pert.w = w;
    pert.eta = scales.eta;
    std::vector<int> src_of_level;
    if (decision.branch == WellBranch::symmetric_delocalized) {
        // delocalized even combination of the two grounds; excited levels kept
        // localized (their weights are negligible whenever this branch fires)
        pert.e_space.push_back(0.5 * (e_left_ground + e_right_ground));
        pert.zbar.push_back(0.5 * (zbar_left_ground + zbar_right_ground));
        src_of_level.push_back(2); // delocalized
        std::size_t skip_l = 0, skip_r = 0;
        for (std::size_t n = 0; n < all.e.size(); ++n) {
            if (all.src[n] == 0 && skip_l == 0 && all.e[n] == e_left_ground) { skip_l = 1; continue; }
            if (all.src[n] == 1 && skip_r == 0 && all.e[n] == e_right_ground) { skip_r = 1; continue; }
            pert.e_space.push_back(all.e[n]);
            pert.zbar.push_back(all.zbar[n]);
            src_of_level.push_back(all.src[n]);
        }
    } else {
        pert.e_space = all.e;
        pert.zbar = all.zbar;
        src_of_level = all.src;
    }
    for (std::size_t n = 0; n < pert.e_space.size(); ++n) {
        const double split = w * (1.0 + scales.eta * pert.zbar[n]);
        pert.e_up.push_back(pert.e_space[n] + split);
        pert.e_down.push_back(pert.e_space[n] - split);
    }

    for (std::size_t n = 0; n < pert.e_space.size(); ++n) {
        LevelSummary lv;
        lv.n = static_cast<int>(n);
        lv.e_dimless = pert.e_space[n];
        lv.e_si = scales.to_si_energy(pert.e_space[n]);
        lv.zbar_dimless = pert.zbar[n];
        lv.beta_bar_si = level_mean_beta(scales, pert.zbar[n]);
        rep.levels.push_back(lv);
    }

    LevelSet exact;
    const LevelSet* exact_ptr = nullptr;
    if (cfg.compute_exact && !all.e_up.empty()) {
        exact.provenance = LevelProvenance::exact_sector;
        exact.w = w;
        exact.eta = scales.eta;
        exact.e_up = all.e_up;
        exact.e_down = all.e_dn;
        exact_ptr = &exact;
    }
    scenario_detail::fill_spin_blocks(cfg, scales, pert, exact_ptr, rep);

    double right_occ = 0.0;
    const auto occ = level_occupations(pert, scales.b);
    for (std::size_t n = 0; n < occ.size(); ++n) {
        if (src_of_level[n] == 1) right_occ += occ[n];
        if (src_of_level[n] == 2) right_occ += 0.5 * occ[n]; // delocalized half
    }
    rep.right_occupation = right_occ;
    return rep;
}

inline ScenarioReport run_scenario(const ScenarioConfig& cfg) {
    if (cfg.kind == PotentialKind::double_well) return run_double_well(cfg);
    return run_extended_well(cfg);
}

// Parameter sweep over one axis. Failed runs are recorded, not fatal.
enum class SweepAxis { a, width, separation, b_field, floor_right };

inline const char* to_string(SweepAxis ax) {
    switch (ax) {
    case SweepAxis::a: return "a";
    case SweepAxis::width: return "L";
    case SweepAxis::separation: return "l";
    case SweepAxis::b_field: return "B";
    case SweepAxis::floor_right: return "E_right0";
    }
    return "?";
}

inline SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "a") return SweepAxis::a;
    if (s == "L") return SweepAxis::width;
    if (s == "l") return SweepAxis::separation;
    if (s == "B") return SweepAxis::b_field;
    if (s == "E_right0") return SweepAxis::floor_right;
    throw ValidationError("sweep: unknown axis '" + s + "' (a, L, l, B, E_right0)");
}

struct SweepRow {
    int index = 0;
    double value = 0.0;
    std::string status; // "ok" or "error"
    std::string message;
    double beta_a_si = quiet_nan;
    double t_a_kelvin = quiet_nan;
    double beta_eff_si = quiet_nan;
    double t_eff_kelvin = quiet_nan;
    double beta_offset_rel = quiet_nan;
    double ground_log_weight_gap = quiet_nan;
};

struct SweepReport {
    SweepAxis axis = SweepAxis::a;
    std::vector<SweepRow> rows;
    std::vector<ScenarioReport> reports; // successful runs, index-aligned gaps
};

inline SweepReport sweep(const ScenarioConfig& base, SweepAxis axis,
                         const std::vector<double>& values) {
    SweepReport out;
    out.axis = axis;
    for (std::size_t i = 0; i < values.size(); ++i) {
        ScenarioConfig c = base;
        switch (axis) {
        case SweepAxis::a: c.a = values[i]; break;
        case SweepAxis::width: c.width = values[i]; break;
        case SweepAxis::separation: c.separation = values[i]; break;
        case SweepAxis::b_field: c.b_field = values[i]; c.omega = -1.0; break;
        case SweepAxis::floor_right: c.floor_right = values[i]; break;
        }
        SweepRow row;
        row.index = static_cast<int>(i);
        row.value = values[i];
        try {
            // sweeps skip state dumps and relaxation unless asked for
            const auto rep = run_scenario(c);
            row.status = "ok";
            row.beta_a_si = rep.beta_a_si;
            row.t_a_kelvin = rep.t_a_kelvin;
            row.beta_eff_si = rep.spin_pert.beta_eff_si;
            row.t_eff_kelvin = rep.spin_pert.t_eff_kelvin;
            row.beta_offset_rel = rep.beta_offset_rel;
            row.ground_log_weight_gap = rep.ground_log_weight_gap;
            out.reports.push_back(rep);
        } catch (const Error& e) {
            row.status = "error";
            row.message = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace unruh

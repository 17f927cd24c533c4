#pragma once

// Potential specifications and their sampling onto a grid. Hard walls are
// Dirichlet constraints (points outside every well are simply excluded from
// the discrete operator), never large finite potentials: this keeps the
// matrix scale set by 2/h^2 + O(1) instead of an arbitrary wall height.
//
// All lengths and energies here are dimensionless (ScaleSystem units).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unruh/errors.hpp"
#include "unruh/grid.hpp"

namespace unruh {

enum class PotentialKind : std::uint8_t { infinite_well, double_well, tabulated };

struct PotentialSpec {
    PotentialKind kind = PotentialKind::infinite_well;
    double width = 0.0;        // L: well width
    double separation = 0.0;   // l: left-edge offset of the right well
    double floor_left = 0.0;   // energy offset inside the left well
    double floor_right = 0.0;  // energy offset inside the right well
    double origin = 0.0;       // left edge of the (left) well
    std::vector<std::pair<double, double>> samples; // tabulated (zeta, u)

    static PotentialSpec infinite_well(double width, double floor = 0.0,
                                       double origin = 0.0) {
        if (!(width > 0.0)) throw DomainError("infinite_well: width > 0 required");
        PotentialSpec p;
        p.kind = PotentialKind::infinite_well;
        p.width = width;
        p.floor_left = floor;
        p.origin = origin;
        return p;
    }

    static PotentialSpec double_well(double width, double separation,
                                     double floor_left = 0.0,
                                     double floor_right = 0.0) {
        if (!(width > 0.0)) throw DomainError("double_well: width > 0 required");
        if (!(separation > width)) {
            throw GeometryError("double_well: separation > width required (disjoint wells)");
        }
        PotentialSpec p;
        p.kind = PotentialKind::double_well;
        p.width = width;
        p.separation = separation;
        p.floor_left = floor_left;
        p.floor_right = floor_right;
        return p;
    }

    static PotentialSpec tabulated(std::vector<std::pair<double, double>> samples) {
        if (samples.size() < 2) {
            throw DomainError("tabulated: need >= 2 samples");
        }
        if (!std::is_sorted(samples.begin(), samples.end(),
                            [](const auto& a, const auto& b) { return a.first < b.first; })) {
            throw ValidationError("tabulated: positions strictly increasing required");
        }
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (!(samples[i].first > samples[i - 1].first)) {
                throw ValidationError("tabulated: positions strictly increasing required");
            }
        }
        PotentialSpec p;
        p.kind = PotentialKind::tabulated;
        p.samples = std::move(samples);
        return p;
    }
};

// Potential sampled on a grid. active[i] == 0 marks a Dirichlet point: it is
// outside every well (or on a wall) and carries no unknown.
struct SampledPotential {
    std::vector<double> u;        // size grid.n; meaningful where active
    std::vector<std::uint8_t> active;
};

namespace detail {

// Membership in the open interval (lo, hi) with a relative guard so that a
// grid point landing on a wall within rounding counts as the wall.
inline bool strictly_inside(double x, double lo, double hi, double h) {
    const double guard = 1e-9 * h;
    return x > lo + guard && x < hi - guard;
}

} // namespace detail

inline SampledPotential build_potential(const PotentialSpec& spec, const Grid& g) {
    SampledPotential out;
    out.u.assign(static_cast<std::size_t>(g.n), 0.0);
    out.active.assign(static_cast<std::size_t>(g.n), 0);
    const double h = g.h();

    switch (spec.kind) {
    case PotentialKind::infinite_well: {
        const double lo = spec.origin;
        const double hi = spec.origin + spec.width;
        if (lo < g.zeta_min - 1e-9 * h || hi > g.zeta_max + 1e-9 * h) {
            throw GeometryError("build_potential: well extends beyond the grid");
        }
        for (int i = 0; i < g.n; ++i) {
            const double x = g.point(i);
            if (detail::strictly_inside(x, lo, hi, h)) {
                out.u[i] = spec.floor_left;
                out.active[i] = 1;
            }
        }
        break;
    }
    case PotentialKind::double_well: {
        const double l_lo = spec.origin;
        const double l_hi = spec.origin + spec.width;
        const double r_lo = spec.origin + spec.separation;
        const double r_hi = r_lo + spec.width;
        if (l_lo < g.zeta_min - 1e-9 * h || r_hi > g.zeta_max + 1e-9 * h) {
            throw GeometryError("build_potential: wells extend beyond the grid");
        }
        for (int i = 0; i < g.n; ++i) {
            const double x = g.point(i);
            if (detail::strictly_inside(x, l_lo, l_hi, h)) {
                out.u[i] = spec.floor_left;
                out.active[i] = 1;
            } else if (detail::strictly_inside(x, r_lo, r_hi, h)) {
                out.u[i] = spec.floor_right;
                out.active[i] = 1;
            }
        }
        break;
    }
    case PotentialKind::tabulated: {
        const double lo = spec.samples.front().first;
        const double hi = spec.samples.back().first;
        if (g.zeta_min < lo - 1e-9 * h || g.zeta_max > hi + 1e-9 * h) {
            throw GeometryError("build_potential: grid extends beyond tabulated range");
        }
        std::size_t seg = 0;
        for (int i = 0; i < g.n; ++i) {
            const double x = std::clamp(g.point(i), lo, hi);
            while (seg + 2 < spec.samples.size() && spec.samples[seg + 1].first < x) ++seg;
            const auto& [x0, u0] = spec.samples[seg];
            const auto& [x1, u1] = spec.samples[seg + 1];
            const double w = (x - x0) / (x1 - x0);
            out.u[i] = u0 + w * (u1 - u0);
            if (i > 0 && i + 1 < g.n) out.active[i] = 1; // Dirichlet box ends
        }
        break;
    }
    }

    int n_active = 0;
    for (auto f : out.active) n_active += f;
    if (n_active < 3) {
        throw GeometryError("build_potential: fewer than 3 interior points; grid too coarse");
    }
    return out;
}

// Two-column CSV (position, energy), dimensionless. '#' lines and a single
// non-numeric header line are skipped.
inline PotentialSpec load_tabulated_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_tabulated_potential: cannot open " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x = 0.0, u = 0.0;
        if (!(ss >> x >> u)) {
            if (lineno == 1) continue; // header
            throw ParseError("load_tabulated_potential: bad row at line " +
                             std::to_string(lineno) + " of " + path);
        }
        samples.emplace_back(x, u);
    }
    return PotentialSpec::tabulated(std::move(samples));
}

} // namespace unruh

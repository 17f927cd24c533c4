#pragma once

// Discretization of the scaled Hamiltonian
//
//   H = -d^2/dzeta^2 + u(zeta) + zeta  (tilt optional, slope exactly 1)
//
// on a uniform grid with the 3-point stencil, plus eigenpair extraction and
// a grid-refinement diagnostic. Wavefunctions are normalized under the
// trapezoid rule, h * sum(phi_i^2) = 1, and stored on the full grid with
// zeros at Dirichlet points.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "unruh/errors.hpp"
#include "unruh/grid.hpp"
#include "unruh/potential.hpp"
#include "unruh/tridiag.hpp"

namespace unruh {

struct AssembledOperator {
    SymTridiag matrix;
    std::vector<int> active_index; // row -> grid point index
    Grid grid;
    bool tilted = false;

    // extra Zeeman diagonal added on top (exact-sector solves)
    // kept out of this struct; see add_diagonal below.
};

inline AssembledOperator assemble_hamiltonian(const SampledPotential& pot,
                                              const Grid& g, bool include_tilt) {
    if (pot.u.size() != static_cast<std::size_t>(g.n) ||
        pot.active.size() != static_cast<std::size_t>(g.n)) {
        throw DomainError("assemble_hamiltonian: potential not sampled on this grid");
    }
    const double h = g.h();
    const double inv_h2 = 1.0 / (h * h);

    AssembledOperator op{SymTridiag{}, {}, g, include_tilt};
    for (int i = 0; i < g.n; ++i) {
        if (pot.active[i]) op.active_index.push_back(i);
    }
    const std::size_t m = op.active_index.size();
    if (m < 3) throw GeometryError("assemble_hamiltonian: fewer than 3 active points");

    op.matrix.diag.resize(m);
    op.matrix.off.assign(m - 1, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const int i = op.active_index[r];
        double d = 2.0 * inv_h2 + pot.u[i];
        if (include_tilt) d += g.point(i);
        op.matrix.diag[r] = d;
        if (r + 1 < m && op.active_index[r + 1] == i + 1) {
            op.matrix.off[r] = -inv_h2; // grid neighbors couple; wall gaps do not
        }
    }
    return op;
}

// Extra diagonal term v(zeta_i) added row-wise (used for Zeeman sectors).
template <typename F>
inline AssembledOperator add_diagonal(AssembledOperator op, F&& v) {
    for (std::size_t r = 0; r < op.matrix.diag.size(); ++r) {
        op.matrix.diag[r] += v(op.grid.point(op.active_index[r]));
    }
    return op;
}

struct SpatialSpectrum {
    std::vector<double> energies;              // ascending, scaled units
    std::vector<std::vector<double>> states;   // full-grid, trapezoid-normalized
    std::vector<double> mean_positions;        // <zeta> per state
    Grid grid;
    double residual_max = 0.0;     // in l2 (unit-vector) norm
    double ortho_defect_max = 0.0;
};

inline SpatialSpectrum lowest_eigenpairs(const AssembledOperator& op, int k,
                                         const EigenOptions& opts = {}) {
    const std::size_t m = op.matrix.size();
    if (k < 1) throw DomainError("lowest_eigenpairs: k >= 1 required");
    if (static_cast<std::size_t>(k) > m / 4) {
        throw DomainError("lowest_eigenpairs: k <= n_active/4 required "
                          "(discrete levels above that are not trustworthy)");
    }

    const auto eig = lowest_eigenpairs_tridiag(op.matrix, k, opts);
    SpatialSpectrum s{{}, {}, {}, op.grid, eig.residual_max, eig.ortho_defect_max};
    s.energies = eig.values;
    const double h = op.grid.h();
    const double scale = 1.0 / std::sqrt(h);

    s.states.reserve(eig.vectors.size());
    s.mean_positions.reserve(eig.vectors.size());
    for (const auto& v : eig.vectors) {
        std::vector<double> phi(static_cast<std::size_t>(op.grid.n), 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            phi[op.active_index[r]] = v[r] * scale;
        }
        double zbar = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const int i = op.active_index[r];
            zbar += op.grid.point(i) * phi[i] * phi[i];
        }
        zbar *= h;
        s.states.push_back(std::move(phi));
        s.mean_positions.push_back(zbar);
    }
    return s;
}

// Richardson-based order check. Solves on g, g/2 and g/4 (nested uniform
// refinements), extrapolates the two finest solutions to a reference, and
// reports err(h)/err(h/2) per level. A clean 3-point stencil in its
// asymptotic regime gives ratios near 4 (observed order near 2).
struct RefinementReport {
    std::vector<double> e_coarse, e_mid, e_fine;
    std::vector<double> richardson;        // (4 e_fine - e_mid) / 3
    std::vector<double> ratio;             // err(h) / err(h/2)
    std::vector<double> observed_order;    // log2(ratio)
    std::vector<bool> asymptotic;          // ratio within [3.5, 4.5]
    bool all_asymptotic = true;
};

inline RefinementReport refine_check(const PotentialSpec& spec, const Grid& g,
                                     int k, bool include_tilt,
                                     const EigenOptions& opts = {}) {
    const Grid g2 = g.refined();
    const Grid g4 = g2.refined();
    const auto e1 = lowest_eigenvalues(
        assemble_hamiltonian(build_potential(spec, g), g, include_tilt).matrix, k, opts);
    const auto e2 = lowest_eigenvalues(
        assemble_hamiltonian(build_potential(spec, g2), g2, include_tilt).matrix, k, opts);
    const auto e4 = lowest_eigenvalues(
        assemble_hamiltonian(build_potential(spec, g4), g4, include_tilt).matrix, k, opts);

    RefinementReport r;
    r.e_coarse = e1;
    r.e_mid = e2;
    r.e_fine = e4;
    for (int i = 0; i < k; ++i) {
        const double ref = (4.0 * e4[i] - e2[i]) / 3.0;
        r.richardson.push_back(ref);
        const double err1 = std::fabs(e1[i] - ref);
        const double err2 = std::fabs(e2[i] - ref);
        const double ratio = err2 > 0.0 ? err1 / err2
                                        : std::numeric_limits<double>::infinity();
        r.ratio.push_back(ratio);
        r.observed_order.push_back(std::log2(ratio));
        const bool ok = ratio >= 3.5 && ratio <= 4.5;
        r.asymptotic.push_back(ok);
        r.all_asymptotic = r.all_asymptotic && ok;
    }
    return r;
}

} // namespace unruh

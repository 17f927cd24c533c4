#pragma once

// Spin-resolved thermal structure on top of a spatial spectrum.
//
// A magnetic moment riding on spatial level n sees the Zeeman splitting
// weighted by the local lapse: sector energies are
//
//   E_n^(sigma) = E_n + sigma * w * (1 + eta * zbar_n),   sigma = +/-1,
//
// in scaled units (w = hbar*omega / e_star). Tracing out space with weights
// exp(-b E) leaves a 2x2 diagonal state whose effective inverse temperature
// is read off from the population ratio:
//
//   beta_eff = (log c_- - log c_+) / (2 w).
//
// All level sums run in log space; energy references are shifted to the
// lowest level so a single dominant level yields exact coefficients.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "unruh/errors.hpp"
#include "unruh/kinematics.hpp"
#include "unruh/numerics.hpp"
#include "unruh/scales.hpp"
#include "unruh/spectral.hpp"

namespace unruh {

struct SpinCoupling {
    double omega; // Zeeman angular frequency, |charge| B / (2 m) [rad/s]

    static SpinCoupling from_omega(double omega) {
        if (!(omega >= 0.0)) throw DomainError("SpinCoupling: omega >= 0 required");
        return SpinCoupling{omega};
    }

    static SpinCoupling from_field(double b_tesla, double mass, double charge) {
        if (!(mass > 0.0)) throw DomainError("SpinCoupling: mass > 0 required");
        if (!(b_tesla >= 0.0)) throw DomainError("SpinCoupling: B >= 0 required");
        return SpinCoupling{std::fabs(charge) * b_tesla / (2.0 * mass)};
    }
};

enum class LevelProvenance { perturbative, exact_sector };

struct LevelSet {
    LevelProvenance provenance = LevelProvenance::perturbative;
    double w = 0.0;   // scaled Zeeman half-splitting
    double eta = 0.0;
    std::vector<double> e_space; // spatial energies (perturbative route)
    std::vector<double> zbar;    // mean positions (perturbative route)
    std::vector<double> e_up;    // sigma = +1 sector energies
    std::vector<double> e_down;  // sigma = -1 sector energies

    std::size_t size() const { return e_up.size(); }
};

// Lapse-weighted mean inverse temperature of a normalized state, computed two
// ways that must agree: the quadrature of the local field beta_a N(z) against
// |phi|^2, and the closed form beta_a (1 + eta <zeta>). Their agreement is an
// algebraic identity, so a mismatch flags a broken normalization.
struct MeanInverseBeta {
    double value;            // [1/J]
    double route_quadrature; // [1/J]
    double route_identity;   // [1/J]
};

inline MeanInverseBeta mean_inverse_beta(const std::vector<double>& phi,
                                         const Grid& g, const ScaleSystem& s) {
    if (phi.size() != static_cast<std::size_t>(g.n)) {
        throw DomainError("mean_inverse_beta: state not sampled on this grid");
    }
    const double beta_a = unruh_beta(s.frame);
    const double h = g.h();
    double quad = 0.0;
    double norm = 0.0;
    double zbar = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double w = phi[i] * phi[i];
        quad += (1.0 + s.eta * g.point(i)) * w;
        zbar += g.point(i) * w;
        norm += w;
    }
    quad *= h * beta_a;
    norm *= h;
    zbar *= h;
    if (std::fabs(norm - 1.0) > 1e-8) {
        throw DomainError("mean_inverse_beta: state is not trapezoid-normalized");
    }
    const double ident = beta_a * (1.0 + s.eta * zbar);
    if (!nearly_equal(quad, ident, 1e-12)) {
        throw Error("mean_inverse_beta: quadrature route disagrees with identity route");
    }
    return MeanInverseBeta{ident, quad, ident};
}

inline double level_mean_beta(const ScaleSystem& s, double zbar) {
    return unruh_beta(s.frame) * (1.0 + s.eta * zbar);
}

// Sector energies to first order in the Zeeman-lapse coupling.
inline LevelSet perturbed_levels(const SpatialSpectrum& sp, double w, double eta) {
    if (!(w >= 0.0)) throw DomainError("perturbed_levels: w >= 0 required");
    LevelSet ls;
    ls.provenance = LevelProvenance::perturbative;
    ls.w = w;
    ls.eta = eta;
    ls.e_space = sp.energies;
    ls.zbar = sp.mean_positions;
    ls.e_up.reserve(sp.energies.size());
    ls.e_down.reserve(sp.energies.size());
    for (std::size_t n = 0; n < sp.energies.size(); ++n) {
        const double split = w * (1.0 + eta * sp.mean_positions[n]);
        ls.e_up.push_back(sp.energies[n] + split);
        ls.e_down.push_back(sp.energies[n] - split);
    }
    return ls;
}

// First-order mixing coefficients c_{nk} = w*eta*<k|zeta|n> / (E_n - E_k) for
// the sigma = +1 sector (the -1 sector is the negative). Diagnostic only; the
// reduced spin state needs only the energies.
inline std::vector<std::vector<double>>
first_order_corrections(const SpatialSpectrum& sp, double w, double eta) {
    const std::size_t k = sp.energies.size();
    const double h = sp.grid.h();
    std::vector<std::vector<double>> c(k, std::vector<double>(k, 0.0));
    for (std::size_t n = 0; n < k; ++n) {
        for (std::size_t m = 0; m < k; ++m) {
            if (m == n) continue;
            const double gap = sp.energies[n] - sp.energies[m];
            if (std::fabs(gap) < 1e-8 * std::fmax(1.0, std::fabs(sp.energies[n]))) {
                throw ConvergenceError("first_order_corrections: (near-)degenerate "
                                       "levels; perturbative mixing undefined");
            }
            double zmn = 0.0;
            for (int i = 0; i < sp.grid.n; ++i) {
                zmn += sp.states[m][i] * sp.grid.point(i) * sp.states[n][i];
            }
            zmn *= h;
            c[n][m] = w * eta * zmn / gap;
        }
    }
    return c;
}

// Exact sector solve: same spatial operator with the full diagonal Zeeman
// term sigma * w * (1 + eta * zeta) added before diagonalization.
inline SpatialSpectrum exact_sector_spectrum(const SampledPotential& pot,
                                             const Grid& g, bool include_tilt,
                                             double w, double eta, int sigma,
                                             int k, const EigenOptions& opts = {}) {
    if (sigma != 1 && sigma != -1) {
        throw DomainError("exact_sector_spectrum: sigma must be +1 or -1");
    }
    auto op = assemble_hamiltonian(pot, g, include_tilt);
    op = add_diagonal(std::move(op), [w, eta, sigma](double zeta) {
        return sigma * w * (1.0 + eta * zeta);
    });
    return lowest_eigenpairs(op, k, opts);
}

inline LevelSet exact_levels(const SpatialSpectrum& up, const SpatialSpectrum& down,
                             double w, double eta) {
    if (up.energies.size() != down.energies.size()) {
        throw DomainError("exact_levels: sector level counts differ");
    }
    LevelSet ls;
    ls.provenance = LevelProvenance::exact_sector;
    ls.w = w;
    ls.eta = eta;
    ls.e_up = up.energies;
    ls.e_down = down.energies;
    return ls;
}

struct SpinCoefficients {
    double log_up;   // log c_+ up to a common additive shift
    double log_down; // log c_-
};

// Log partition coefficients log c_sigma = LSE_n(-b E_n^sigma), both shifted
// by +b*min(E): the shift cancels in every downstream quantity and keeps a
// single dominant level exact instead of cancelling in 2w/E_n.
inline SpinCoefficients spin_coefficients(const LevelSet& ls, double b) {
    if (!(b > 0.0)) throw DomainError("spin_coefficients: b > 0 required");
    if (ls.size() == 0) throw DomainError("spin_coefficients: empty level set");

    std::vector<double> lu(ls.size()), ld(ls.size());
    if (ls.provenance == LevelProvenance::perturbative) {
        double ref = ls.e_space[0];
        for (double e : ls.e_space) ref = std::fmin(ref, e);
        for (std::size_t n = 0; n < ls.size(); ++n) {
            const double base = -b * (ls.e_space[n] - ref);
            const double half = b * ls.w * (1.0 + ls.eta * ls.zbar[n]);
            lu[n] = base - half;
            ld[n] = base + half;
        }
    } else {
        double ref = ls.e_up[0];
        for (double e : ls.e_up) ref = std::fmin(ref, e);
        for (double e : ls.e_down) ref = std::fmin(ref, e);
        for (std::size_t n = 0; n < ls.size(); ++n) {
            lu[n] = -b * (ls.e_up[n] - ref);
            ld[n] = -b * (ls.e_down[n] - ref);
        }
    }
    return SpinCoefficients{logsumexp(lu), logsumexp(ld)};
}

// Spin-traced occupation of each spatial level (normalized).
inline std::vector<double> level_occupations(const LevelSet& ls, double b) {
    if (!(b > 0.0)) throw DomainError("level_occupations: b > 0 required");
    std::vector<double> logw(ls.size());
    for (std::size_t n = 0; n < ls.size(); ++n) {
        const std::vector<double> pair{-b * ls.e_up[n], -b * ls.e_down[n]};
        logw[n] = logsumexp(pair);
    }
    const double z = logsumexp(logw);
    std::vector<double> p(ls.size());
    for (std::size_t n = 0; n < ls.size(); ++n) p[n] = std::exp(logw[n] - z);
    return p;
}

struct SpinThermalState {
    double log_c_up = 0.0;
    double log_c_down = 0.0;
    double p_up = 0.5;
    double p_down = 0.5;
    bool zero_coupling = false;
    double beta_eff = quiet_nan;         // scaled units (1 / scaled energy)
    double beta_eff_si = quiet_nan;      // [1/J]
    double t_eff_kelvin = quiet_nan;     // [K]
};

inline SpinThermalState reduced_spin_state_dimless(const SpinCoefficients& c,
                                                   double w) {
    SpinThermalState st;
    st.log_c_up = c.log_up;
    st.log_c_down = c.log_down;
    const auto p = softmax_pair(c.log_up, c.log_down);
    st.p_up = p.a;
    st.p_down = p.b;
    if (w == 0.0) {
        st.zero_coupling = true; // populations stay defined; beta_eff does not
        return st;
    }
    st.beta_eff = (c.log_down - c.log_up) / (2.0 * w);
    return st;
}

inline SpinThermalState reduced_spin_state(const SpinCoefficients& c, double w,
                                           const ScaleSystem& s) {
    SpinThermalState st = reduced_spin_state_dimless(c, w);
    if (!st.zero_coupling) {
        st.beta_eff_si = st.beta_eff / s.energy_unit;
        st.t_eff_kelvin = 1.0 / (s.frame.k.k_B * st.beta_eff_si);
    }
    return st;
}

// Zero-extent reference: a pointlike moment on the fiducial worldline is
// thermal at the wedge temperature, p_sigma ~ exp(-beta_a hbar omega sigma).
inline SpinThermalState bhl_reference(const RindlerFrame& f, const SpinCoupling& cpl) {
    const double beta_a = unruh_beta(f);
    const double x = beta_a * f.k.hbar * cpl.omega;
    SpinThermalState st;
    st.log_c_up = -x;
    st.log_c_down = x;
    const auto p = softmax_pair(-x, x);
    st.p_up = p.a;
    st.p_down = p.b;
    if (cpl.omega == 0.0) {
        st.zero_coupling = true;
        return st;
    }
    st.beta_eff_si = beta_a;
    st.t_eff_kelvin = 1.0 / (f.k.k_B * beta_a);
    return st;
}

} // namespace unruh

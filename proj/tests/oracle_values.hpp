#pragma once

// Reference values frozen from independent calculations (high-precision
// arithmetic and closed forms evaluated outside this library). Tests compare
// library output against these literals; recomputing them through the library
// itself would test nothing.

#include <cmath>

namespace oracle {

// CODATA 2018 exact/recommended values, restated so a drifted constants
// header cannot silently satisfy its own tests.
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double c = 2.99792458e8;
inline constexpr double k_B = 1.380649e-23;
inline constexpr double m_e = 9.1093837015e-31;
inline constexpr double q_e = 1.602176634e-19;

// Wedge thermometry at a = 2.5e20 m/s^2 (electron, B = 1 T unless noted).
inline constexpr double a_ref = 2.5e20;
inline constexpr double t_a_ref = 1.0137533806863075;      // K
inline constexpr double t_a_1e20 = 0.40550135227452294;    // K at a = 1e20
inline constexpr double beta_a_ref = 7.1447066456503e22;   // 1/J

// Scale system for (a_ref, m_e).
inline constexpr double l_star = 2.992733938378337e-10;    // m
inline constexpr double e_star = 6.815490440297383e-20;    // J
inline constexpr double eta = 8.324663960725557e-07;
inline constexpr double b = 4869.46798421588;

// Zeeman frequency |q| B / (2 m) for the electron at B = 1 T, and the
// dimensionless product beta_a * hbar * omega.
inline constexpr double omega_b1 = 87941000538.60815;      // rad/s
inline constexpr double x_spin = 0.6626008139810318;       // beta_a hbar omega

// Regime ratios for (a_ref, m_e): r1 = (hbar a / c)/(m c^2),
// r2 = a z / c^2 at the quoted extents, r3 = hbar omega_b1 / (m c^2).
inline constexpr double r1_ref = 1.0741503271976203e-09;
inline constexpr double r2_1em7 = 0.00027816251401340463;
inline constexpr double r2_1em6 = 0.002781625140134046;
inline constexpr double r2_1em3 = 2.781625140134046;
inline constexpr double r3_ref = 1.1327580619432971e-10;

// Geometry in scaled units: L = 1e-7 m and l = 1e-3 m over l_star.
inline constexpr double lam_1em7 = 334.14263365552193;
inline constexpr double sep_1em3 = 3341426.3365552193;

// Double-well observables: suppression exponent beta_a * m * a * l and the
// Tolman ratio 1 + a l / c^2.
inline constexpr double suppression_1em3 = 16270968567.4714;
inline constexpr double suppression_1em6 = 16270968.567471398;
inline constexpr double tolman_ratio_1em6 = 1.002781625140134;
inline constexpr double tolman_ratio_1em3 = 3.781625140134046;

// Negated zeros of Ai (30-digit arithmetic, rounded to nearest double):
// eigenvalues of -d^2/dz^2 + z on the half line with a hard floor at 0.
inline constexpr double airy_zero[6] = {
    2.338107410459767, 4.08794944413097, 5.520559828095551,
    6.786708090071759, 7.944133587120853, 9.02265085334098,
};

// Ground-state mean position of the ramp problem, <z> = (2/3) |a_1|.
inline constexpr double ramp_zbar0 = 1.5587382736398447;

// b * (E_1 - E_0) for the ramp spectrum at the reference scales.
inline constexpr double ramp_gap_b = 8520.79976039713;

// Quoted three-significant-figure targets.
inline constexpr double t_a_quoted = 1.014;            // K
inline constexpr double beta_offset_quoted = 1.2976e-6;

// Eigenvalue of the discrete Dirichlet Laplacian (3-point stencil, spacing h,
// m interior points spanning (0, L), L = (m+1) h): exact closed form for
// mode k = 1..m, to compare against the assembled operator directly.
inline double fd_box_level(int k, double h, double length) {
    const double s = std::sin(0.5 * k * M_PI * h / length);
    return 4.0 / (h * h) * s * s;
}

inline double continuum_box_level(int k, double length) {
    const double kp = k * M_PI / length;
    return kp * kp;
}

// Two-level master equation: closed-form occupation of the upper level at
// time t given up-rate u = W(0->1) and down-rate d = W(1->0).
inline double two_level_p1(double t, double u, double d, double p1_0) {
    const double p_inf = u / (u + d);
    return p_inf + (p1_0 - p_inf) * std::exp(-(u + d) * t);
}

} // namespace oracle

#pragma once

// Nondimensionalization for the tilted-well Schroedinger problem. With
//
//   l_star = (hbar^2 / (2 m^2 a))^{1/3},   e_star = m a l_star,
//
// the spatial Hamiltonian -hbar^2/(2m) d^2/dz^2 + U + m a z becomes
// e_star (-d^2/dzeta^2 + u + zeta): the linear tilt has slope exactly 1 in
// scaled units. The two derived numbers that matter downstream are
// eta = a l_star / c^2 (lapse change per scaled length) and
// b = beta_a e_star (wedge inverse temperature in scaled energy units).

#include <cmath>

#include "unruh/errors.hpp"
#include "unruh/kinematics.hpp"

namespace unruh {

struct ScaleSystem {
    RindlerFrame frame;
    double mass;        // [kg]
    double length_unit; // l_star [m]
    double energy_unit; // e_star [J]
    double eta;         // a l_star / c^2, dimensionless
    double b;           // beta_a * e_star, dimensionless

    double to_dimless_length(double z_si) const { return z_si / length_unit; }
    double to_si_length(double zeta) const { return zeta * length_unit; }
    double to_dimless_energy(double e_si) const { return e_si / energy_unit; }
    double to_si_energy(double e) const { return e * energy_unit; }
    // Zeeman half-splitting hbar*omega in scaled energy units.
    double coupling_dimless(double omega) const {
        return frame.k.hbar * omega / energy_unit;
    }
};

inline ScaleSystem make_scales(const RindlerFrame& f, double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw DomainError("make_scales: mass > 0 required");
    }
    const double l_star = std::cbrt(f.k.hbar * f.k.hbar / (2.0 * mass * mass * f.a));
    const double e_star = mass * f.a * l_star;
    ScaleSystem s{f, mass, l_star, e_star,
                  f.a * l_star / (f.k.c * f.k.c),
                  unruh_beta(f) * e_star};
    return s;
}

} // namespace unruh

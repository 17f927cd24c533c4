#pragma once

// Uniformly accelerated (Rindler) frame kinematics: the comoving chart
//
//   cT = (z + c^2/a) sinh(a t / c),
//   Z  = (z + c^2/a) cosh(a t / c) - c^2/a,
//
// its lapse N(z) = 1 + a z/c^2, and the temperature/inverse-temperature
// fields attached to the frame. Coordinates: t in s, x,y,z in m; inertial
// events carry ct (m) as the time component. The chart is valid on the wedge
// N(z) > 0.

#include <cmath>
#include <string>
#include <vector>

#include "unruh/constants.hpp"
#include "unruh/errors.hpp"
#include "unruh/numerics.hpp"

namespace unruh {

inline constexpr double two_pi = 6.283185307179586476925286766559;

struct RindlerFrame {
    double a;                 // proper acceleration at z = 0 [m/s^2]
    PhysicalConstants k;

    explicit RindlerFrame(double a_, PhysicalConstants k_ = codata2018())
        : a(a_), k(k_) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw DomainError("RindlerFrame: a > 0 required");
        }
    }
};

struct EventKM {      // accelerated-chart event
    double t = 0.0;   // [s]
    double x = 0.0;   // [m]
    double y = 0.0;   // [m]
    double z = 0.0;   // [m]
};

struct EventMinkowski { // inertial event
    double ct = 0.0;    // [m]
    double x = 0.0;     // [m]
    double y = 0.0;     // [m]
    double z = 0.0;     // [m]
};

// Lapse N(z) = 1 + a z / c^2. Total; callers needing N > 0 enforce it.
inline double lapse(const RindlerFrame& f, double z) noexcept {
    return 1.0 + f.a * z / (f.k.c * f.k.c);
}

// Proper acceleration of the z = const worldline, a(z) = a / N(z).
inline double local_acceleration(const RindlerFrame& f, double z) {
    const double n = lapse(f, z);
    if (!(n > 0.0)) {
        throw WedgeViolation("local_acceleration: N(z) <= 0 (z behind horizon)");
    }
    return f.a / n;
}

// Proper time elapsed on the z = const worldline between coordinate times 0
// and t: tau = N(z) t. Note a(z) * tau(z, t) = a * t for every z.
inline double proper_time(const RindlerFrame& f, double z, double t) {
    const double n = lapse(f, z);
    if (!(n > 0.0)) {
        throw WedgeViolation("proper_time: N(z) <= 0 (z behind horizon)");
    }
    return n * t;
}

// Inverse temperature assigned to the frame's fiducial worldline,
// beta_a = 2 pi c / (hbar a)  [1/J].
inline double unruh_beta(const RindlerFrame& f) {
    return two_pi * f.k.c / (f.k.hbar * f.a);
}

// T_a = hbar a / (2 pi c k_B)  [K].
inline double unruh_temperature(const RindlerFrame& f) {
    return f.k.hbar * f.a / (two_pi * f.k.c * f.k.k_B);
}

// Local inverse temperature field beta_a(z) = beta_a N(z) (Tolman weighting
// of the wedge temperature).
inline double local_inverse_temperature(const RindlerFrame& f, double z) {
    const double n = lapse(f, z);
    if (!(n > 0.0)) {
        throw WedgeViolation("local_inverse_temperature: N(z) <= 0");
    }
    return unruh_beta(f) * n;
}

inline EventMinkowski km_to_minkowski(const RindlerFrame& f, const EventKM& e) {
    if (!(lapse(f, e.z) > 0.0)) {
        throw WedgeViolation("km_to_minkowski: N(z) <= 0");
    }
    const double c2_over_a = f.k.c * f.k.c / f.a;
    const double zs = e.z + c2_over_a;       // shifted vertical coordinate
    const double phi = f.a * e.t / f.k.c;    // rapidity
    EventMinkowski m;
    m.ct = zs * std::sinh(phi);
    m.x = e.x;
    m.y = e.y;
    m.z = zs * std::cosh(phi) - c2_over_a;
    return m;
}

inline EventKM minkowski_to_km(const RindlerFrame& f, const EventMinkowski& m) {
    const double c2_over_a = f.k.c * f.k.c / f.a;
    const double zs = m.z + c2_over_a;
    // Wedge: Z + c^2/a > |cT|. Work with the light-cone pair (zs - ct, zs + ct)
    // so that large-rapidity events do not cancel in zs^2 - ct^2.
    const double u_minus = zs - m.ct;
    const double u_plus = zs + m.ct;
    if (!(u_minus > 0.0) || !(u_plus > 0.0)) {
        throw OutsideWedge("minkowski_to_km: event outside the accelerated wedge");
    }
    EventKM e;
    e.t = (f.k.c / f.a) * artanh(m.ct / zs);
    e.x = m.x;
    e.y = m.y;
    e.z = std::sqrt(u_minus * u_plus) - c2_over_a;
    return e;
}

// Boost block of the chart map in the (ct, z) plane at coordinate time t.
struct Boost2 {
    double tt, tz;
    double zt, zz;
};

inline Boost2 boost_matrix(const RindlerFrame& f, double t) {
    const double phi = f.a * t / f.k.c;
    const double ch = std::cosh(phi);
    const double sh = std::sinh(phi);
    return Boost2{ch, sh, sh, ch};
}

// Frame re-centered on the worldline through z0: acceleration rescales to
// a / N(z0) and positions are measured from z0. The pair (frame, z_offset)
// carries everything needed to map coordinates back.
struct RecenteredFrame {
    RindlerFrame frame;
    double z_offset;     // z0 in the original chart [m]
    double time_factor;  // N(z0): t_new = time_factor * t_old
};

inline RecenteredFrame recenter(const RindlerFrame& f, double z0) {
    const double n0 = lapse(f, z0);
    if (!(n0 > 0.0)) {
        throw WedgeViolation("recenter: N(z0) <= 0");
    }
    return RecenteredFrame{RindlerFrame(f.a / n0, f.k), z0, n0};
}

// Validity-regime diagnostics for the nonrelativistic single-particle
// reduction: r1 = (hbar a / c) / (m c^2), r2 = a z_extent / c^2,
// r3 = hbar omega / (m c^2). Each must stay small.
struct RegimeThresholds {
    double r1_max = 1e-3;
    double r2_max = 1e-2;
    double r3_max = 1e-3;

    friend bool operator==(const RegimeThresholds&, const RegimeThresholds&) = default;
};

struct RegimeReport {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    bool r1_ok = false;
    bool r2_ok = false;
    bool r3_ok = false;
    std::vector<std::string> notes; // near-threshold warnings (within 10x)

    bool pass() const { return r1_ok && r2_ok && r3_ok; }
};

inline RegimeReport regime_check(const RindlerFrame& f, double mass,
                                 double z_extent, double omega,
                                 RegimeThresholds th = {}) {
    if (!(mass > 0.0)) throw DomainError("regime_check: mass > 0 required");
    if (!(z_extent >= 0.0)) throw DomainError("regime_check: z_extent >= 0 required");
    if (!(omega >= 0.0)) throw DomainError("regime_check: omega >= 0 required");

    const double rest_energy = mass * f.k.c * f.k.c;
    RegimeReport r;
    r.r1 = (f.k.hbar * f.a / f.k.c) / rest_energy;
    r.r2 = f.a * z_extent / (f.k.c * f.k.c);
    r.r3 = f.k.hbar * omega / rest_energy;
    r.r1_ok = r.r1 <= th.r1_max;
    r.r2_ok = r.r2 <= th.r2_max;
    r.r3_ok = r.r3 <= th.r3_max;

    auto note_if_near = [&r](const char* name, double value, double limit, bool ok) {
        if (ok && value > 0.1 * limit) {
            r.notes.push_back(std::string(name) + " within 10x of its threshold");
        }
    };
    note_if_near("r1", r.r1, th.r1_max, r.r1_ok);
    note_if_near("r2", r.r2, th.r2_max, r.r2_ok);
    note_if_near("r3", r.r3, th.r3_max, r.r3_ok);
    return r;
}

} // namespace unruh

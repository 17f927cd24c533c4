#include "catch_amalgamated.hpp"

#include <cmath>

#include "unruh/kinematics.hpp"
#include "unruh/numerics.hpp"
#include "unruh/scales.hpp"
#include "unruh/thermometry.hpp"

#include "oracle_values.hpp"

using namespace unruh;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("wedge temperature and inverse temperature anchors") {
    RindlerFrame f(oracle::a_ref);
    CHECK_THAT(unruh_temperature(f), WithinRel(oracle::t_a_ref, 1e-14));
    CHECK_THAT(unruh_beta(f), WithinRel(oracle::beta_a_ref, 1e-14));
    CHECK_THAT(unruh_temperature(RindlerFrame(1e20)),
               WithinRel(oracle::t_a_1e20, 1e-14));

    // beta and T are exact inverses through k_B
    CHECK_THAT(unruh_beta(f) * f.k.k_B * unruh_temperature(f),
               WithinRel(1.0, 1e-15));

    // three-significant-figure quote
    CHECK_THAT(unruh_temperature(f), WithinAbs(oracle::t_a_quoted, 1e-3));

    CHECK_THROWS_AS(RindlerFrame(0.0), DomainError);
    CHECK_THROWS_AS(RindlerFrame(-1.0), DomainError);
}

TEST_CASE("lapse, local acceleration and proper time identities") {
    RindlerFrame f(oracle::a_ref);
    const double horizon = -f.k.c * f.k.c / f.a;

    SplitMix64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const double z = 0.45 * std::fabs(horizon) * rng.next_symmetric();
        const double t = 1e-9 * rng.next_symmetric();
        const double n = lapse(f, z);
        CHECK_THAT(n, WithinRel(1.0 + f.a * z / (f.k.c * f.k.c), 1e-15));

        // a(z) N(z) = a and a(z) tau(z, t) = a t
        CHECK_THAT(local_acceleration(f, z) * n, WithinRel(f.a, 1e-15));
        if (t != 0.0) {
            CHECK_THAT(local_acceleration(f, z) * proper_time(f, z, t),
                       WithinRel(f.a * t, 1e-14));
        }
        CHECK_THAT(local_inverse_temperature(f, z),
                   WithinRel(unruh_beta(f) * n, 1e-15));
    }

    CHECK(lapse(f, horizon) <= 0.0 + 1e-30);
    CHECK_THROWS_AS(local_acceleration(f, horizon), WedgeViolation);
    CHECK_THROWS_AS(proper_time(f, 2.0 * horizon, 1.0), WedgeViolation);
    CHECK_THROWS_AS(local_inverse_temperature(f, horizon), WedgeViolation);
}

TEST_CASE("chart round trip is scale-exact across the wedge") {
    RindlerFrame f(oracle::a_ref);
    const double zs_unit = f.k.c * f.k.c / f.a; // c^2/a, chart length scale
    const double t_unit = f.k.c / f.a;          // c/a, rapidity time scale

    // |t| <= 3 c/a: the round trip loses ~cosh^2(a t / c) ulps to the
    // difference of squares, so +-3 rapidity units keep 1e-12 honest
    SplitMix64 rng(23);
    for (int i = 0; i < 200; ++i) {
        EventKM e;
        e.t = 3.0 * t_unit * rng.next_symmetric();
        e.x = zs_unit * rng.next_symmetric();
        e.y = zs_unit * rng.next_symmetric();
        e.z = zs_unit * (0.9 * rng.next_symmetric() + 2.0); // N in (1.1, 3.9)

        const EventMinkowski m = km_to_minkowski(f, e);
        const EventKM back = minkowski_to_km(f, m);

        CHECK_THAT(back.z + zs_unit, WithinRel(e.z + zs_unit, 1e-12));
        CHECK_THAT(back.t, WithinAbs(e.t, 1e-12 * t_unit + 1e-12 * std::fabs(e.t)));
        CHECK(back.x == e.x);
        CHECK(back.y == e.y);
    }
}

TEST_CASE("events outside the wedge are rejected") {
    RindlerFrame f(oracle::a_ref);
    const double zs_unit = f.k.c * f.k.c / f.a;

    // on and behind the horizon in the accelerated chart
    CHECK_THROWS_AS(km_to_minkowski(f, EventKM{0.0, 0.0, 0.0, -zs_unit}),
                    WedgeViolation);

    // inertial events with |ct| >= Z + c^2/a
    EventMinkowski m;
    m.ct = 2.0 * zs_unit;
    m.z = zs_unit - zs_unit; // zs = zs_unit < |ct|
    CHECK_THROWS_AS(minkowski_to_km(f, m), OutsideWedge);
    m.ct = -2.0 * zs_unit;
    CHECK_THROWS_AS(minkowski_to_km(f, m), OutsideWedge);
    m.ct = 0.0;
    m.z = -1.5 * zs_unit;
    CHECK_THROWS_AS(minkowski_to_km(f, m), OutsideWedge);
}

TEST_CASE("chart pullback reproduces the static metric") {
    RindlerFrame f(oracle::a_ref);
    const double c = f.k.c;
    const double dz = 1e-4 * c * c / f.a;
    const double dt = 1e-4 * c / f.a;

    auto map = [&f](double t, double z) {
        return km_to_minkowski(f, EventKM{t, 0.0, 0.0, z});
    };

    SplitMix64 rng(37);
    for (int i = 0; i < 20; ++i) {
        const double z = (c * c / f.a) * (0.8 * rng.next_symmetric() + 1.0);
        const double t = (c / f.a) * rng.next_symmetric();

        const auto pt = map(t + dt, z), mt = map(t - dt, z);
        const auto pz = map(t, z + dz), mz = map(t, z - dz);
        const double ct_t = (pt.ct - mt.ct) / (2.0 * dt);
        const double zz_t = (pt.z - mt.z) / (2.0 * dt);
        const double ct_z = (pz.ct - mz.ct) / (2.0 * dz);
        const double zz_z = (pz.z - mz.z) / (2.0 * dz);

        const double n = lapse(f, z);
        const double g_tt = -ct_t * ct_t + zz_t * zz_t;
        const double g_tz = -ct_t * ct_z + zz_t * zz_z;
        const double g_zz = -ct_z * ct_z + zz_z * zz_z;

        CHECK_THAT(g_tt, WithinRel(-n * n * c * c, 1e-6));
        CHECK_THAT(g_zz, WithinRel(1.0, 1e-6));
        CHECK_THAT(g_tz, WithinAbs(0.0, 1e-6 * n * c));
    }
}

TEST_CASE("boost block matches the chart map") {
    RindlerFrame f(oracle::a_ref);
    const double zs_unit = f.k.c * f.k.c / f.a;
    const double t = 1.7 * f.k.c / f.a;

    const Boost2 bst = boost_matrix(f, t);
    CHECK_THAT(bst.tt * bst.zz - bst.tz * bst.zt, WithinRel(1.0, 1e-12));
    CHECK(bst.tt == bst.zz);
    CHECK(bst.tz == bst.zt);

    // applying the block to (0, zs) must land on the chart image
    const double z = 0.3 * zs_unit;
    const EventMinkowski m = km_to_minkowski(f, EventKM{t, 0.0, 0.0, z});
    const double zs = z + zs_unit;
    CHECK_THAT(m.ct, WithinRel(bst.tt * 0.0 + bst.tz * zs, 1e-14));
    CHECK_THAT(m.z + zs_unit, WithinRel(bst.zt * 0.0 + bst.zz * zs, 1e-14));
}

TEST_CASE("recentering leaves the local temperature field invariant") {
    RindlerFrame f(oracle::a_ref);
    const double zs_unit = f.k.c * f.k.c / f.a;

    SplitMix64 rng(51);
    for (int i = 0; i < 100; ++i) {
        const double z0 = 0.4 * zs_unit * rng.next_symmetric();
        const double z = 0.4 * zs_unit * rng.next_symmetric();

        const RecenteredFrame rc = recenter(f, z0);
        CHECK_THAT(rc.frame.a * lapse(f, z0), WithinRel(f.a, 1e-15));
        CHECK(rc.time_factor == lapse(f, z0));
        CHECK(rc.z_offset == z0);

        // beta field evaluated in either chart at the same physical point
        CHECK_THAT(local_inverse_temperature(rc.frame, z - z0),
                   WithinRel(local_inverse_temperature(f, z), 1e-12));
        CHECK_THAT(local_acceleration(rc.frame, z - z0),
                   WithinRel(local_acceleration(f, z), 1e-12));
    }

    CHECK_THROWS_AS(recenter(f, -zs_unit), WedgeViolation);
}

TEST_CASE("validity ratios and thresholds") {
    RindlerFrame f(oracle::a_ref);
    const auto r = regime_check(f, oracle::m_e, 1e-6, oracle::omega_b1);
    CHECK_THAT(r.r1, WithinRel(oracle::r1_ref, 1e-14));
    CHECK_THAT(r.r2, WithinRel(oracle::r2_1em6, 1e-14));
    CHECK_THAT(r.r3, WithinRel(oracle::r3_ref, 1e-14));
    CHECK(r.pass());

    const auto r7 = regime_check(f, oracle::m_e, 1e-7, oracle::omega_b1);
    CHECK_THAT(r7.r2, WithinRel(oracle::r2_1em7, 1e-14));
    CHECK(r7.notes.empty()); // all ratios below a tenth of their limits

    const auto wide = regime_check(f, oracle::m_e, 1e-3, oracle::omega_b1);
    CHECK_THAT(wide.r2, WithinRel(oracle::r2_1em3, 1e-14));
    CHECK_FALSE(wide.r2_ok);
    CHECK_FALSE(wide.pass());

    // near-threshold note: r2 in (0.1, 1] of its limit
    const auto near = regime_check(f, oracle::m_e, 3e-6, oracle::omega_b1);
    CHECK(near.pass());
    REQUIRE_FALSE(near.notes.empty());
    CHECK(near.notes.front().find("r2") != std::string::npos);

    CHECK_THROWS_AS(regime_check(f, -1.0, 1e-7, 0.0), DomainError);
    CHECK_THROWS_AS(regime_check(f, oracle::m_e, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(regime_check(f, oracle::m_e, 1e-7, -1.0), DomainError);
}

TEST_CASE("spin coupling from field and frequency") {
    const auto cpl = SpinCoupling::from_field(1.0, oracle::m_e, -oracle::q_e);
    CHECK_THAT(cpl.omega, WithinRel(oracle::omega_b1, 1e-14));
    CHECK(SpinCoupling::from_field(1.0, oracle::m_e, oracle::q_e).omega == cpl.omega);
    CHECK(SpinCoupling::from_omega(0.0).omega == 0.0);
    CHECK_THROWS_AS(SpinCoupling::from_omega(-1.0), DomainError);
    CHECK_THROWS_AS(SpinCoupling::from_field(-1.0, oracle::m_e, oracle::q_e),
                    DomainError);
    CHECK_THROWS_AS(SpinCoupling::from_field(1.0, 0.0, oracle::q_e), DomainError);
}

TEST_CASE("scale system anchors") {
    RindlerFrame f(oracle::a_ref);
    const auto s = make_scales(f, oracle::m_e);
    CHECK_THAT(s.length_unit, WithinRel(oracle::l_star, 1e-14));
    CHECK_THAT(s.energy_unit, WithinRel(oracle::e_star, 1e-14));
    CHECK_THAT(s.eta, WithinRel(oracle::eta, 1e-14));
    CHECK_THAT(s.b, WithinRel(oracle::b, 1e-14));

    // converters are exact inverses
    CHECK_THAT(s.to_si_length(s.to_dimless_length(1e-7)), WithinRel(1e-7, 1e-15));
    CHECK_THAT(s.to_si_energy(s.to_dimless_energy(1e-21)), WithinRel(1e-21, 1e-15));
    CHECK_THAT(s.to_dimless_length(1e-7), WithinRel(oracle::lam_1em7, 1e-14));
    CHECK_THAT(s.to_dimless_length(1e-3), WithinRel(oracle::sep_1em3, 1e-14));

    // scaled coupling w and the identity b * w = beta_a hbar omega
    const double w = s.coupling_dimless(oracle::omega_b1);
    CHECK_THAT(s.b * w, WithinRel(oracle::x_spin, 1e-13));

    CHECK_THROWS_AS(make_scales(f, 0.0), DomainError);
}

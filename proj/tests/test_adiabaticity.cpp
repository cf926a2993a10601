#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gaugesim/adiabaticity.hpp"

using namespace gaugesim;

namespace {

BeamPairConfig canonical(double delta_x = 1.0) {
    BeamPairConfig c;
    c.probe.omega0 = c.control.omega0 = 1.0;
    c.probe.sigma0 = c.control.sigma0 = 10.0;
    c.probe.center_x = 0.5 * delta_x;
    c.control.center_x = -0.5 * delta_x;
    c.probe.k = c.control.k = 0.5;
    return c;
}

} // namespace

TEST_CASE("nonadiabatic rate at the crossover") {
    const BeamPairConfig c = canonical();
    const Grid2D g = make_grid(-50, 50, 0, 6.3, 101, 9);
    const RatioField rf = ratio_field(c, g);
    const int i0 = 50; // |zeta| = 1
    REQUIRE(g.x(i0) == 0.0);

    SECTION("at rest both forms vanish") {
        const RatePair f = nonadiabatic_rate(rf, c, 0.0, 0.0, i0, 4);
        CHECK(f.general == 0.0);
        CHECK(f.paper == 0.0);
    }

    SECTION("motion along y") {
        const RatePair f = nonadiabatic_rate(rf, c, 0.0, 0.01, i0, 4);
        CHECK(f.general == Catch::Approx(0.005).epsilon(1e-12));
        CHECK(f.paper == Catch::Approx(std::sqrt(0.5) * 0.01).epsilon(1e-12));
        CHECK(f.paper == Catch::Approx(0.0070711).epsilon(1e-4));
    }
}

TEST_CASE("flat intensity ratio gives zero rate for transverse motion") {
    const BeamPairConfig c = canonical(0.0); // delta_x = 0: |zeta| == 1 everywhere
    const Grid2D g = make_grid(-50, 50, 0, 6.3, 101, 9);
    const RatioField rf = ratio_field(c, g);
    const RatePair f = nonadiabatic_rate(rf, c, 0.25, 0.0, 30, 4);
    CHECK(f.general == 0.0);
    CHECK(f.paper == 0.0);
}

TEST_CASE("F is absolutely homogeneous of degree 1 in v") {
    const BeamPairConfig c = canonical();
    const Grid2D g = make_grid(-50, 50, 0, 6.3, 101, 9);
    const RatioField rf = ratio_field(c, g);
    const double vx = 0.013, vy = -0.021;
    for (double alpha : {2.0, -3.5, 0.25}) {
        for (int i : {10, 50, 77}) {
            const RatePair f1 = nonadiabatic_rate(rf, c, vx, vy, i, 4);
            const RatePair fa = nonadiabatic_rate(rf, c, alpha * vx, alpha * vy, i, 4);
            CHECK(fa.general == Catch::Approx(std::abs(alpha) * f1.general).epsilon(1e-12));
            CHECK(fa.paper == Catch::Approx(std::abs(alpha) * f1.paper).epsilon(1e-12));
        }
    }
}

TEST_CASE("F_general / F_paper equals cos(theta) pointwise") {
    const BeamPairConfig c = canonical();
    const Grid2D g = make_grid(-75, 75, 0, 6.3, 151, 9);
    const RatioField rf = ratio_field(c, g);
    for (int i = 5; i < g.nx - 5; i += 7) {
        const RatePair f = nonadiabatic_rate(rf, c, 0.004, 0.01, i, 4);
        if (f.paper == 0.0) continue;
        const double cos_theta = std::sqrt(1.0 - rf.sin2theta.at(i, 4));
        CHECK(f.general / f.paper == Catch::Approx(cos_theta).epsilon(1e-12));
    }
}

TEST_CASE("dark state lifetime") {
    CHECK(dark_lifetime(5.0, 5.0, 0.37) == Catch::Approx(0.37).epsilon(1e-14));
    CHECK(dark_lifetime(1e4, 1e7, 1e-7) == Catch::Approx(0.1).epsilon(1e-12));
    CHECK(dark_lifetime(1e4, 1e8, 1e-7) == Catch::Approx(10.0).epsilon(1e-12));
    CHECK(std::isinf(dark_lifetime(0.0, 1e7, 1e-7)));
    CHECK_THROWS_AS(dark_lifetime(1.0, 0.0, 1e-7), ConfigError);
    CHECK_THROWS_AS(dark_lifetime(1.0, 1e7, 0.0), ConfigError);
}

TEST_CASE("doppler compensation") {
    CHECK(doppler_compensation(0.0, 0.5, 0.5) == 0.0);
    const double k_sum = 1.5708e7;
    CHECK(doppler_compensation(0.05, 0.5 * k_sum, 0.5 * k_sum) ==
          Catch::Approx(-7.854e5).epsilon(1e-4));
    CHECK(doppler_compensation(-0.05, 0.5 * k_sum, 0.5 * k_sum) ==
          Catch::Approx(+7.854e5).epsilon(1e-4));
    CHECK(residual_two_photon_detuning(doppler_compensation(0.05, 0.5, 0.5), 1.0, 0.05) == 0.0);
}

TEST_CASE("report uses the velocity spread when configured") {
    const BeamPairConfig c = canonical();
    const Grid2D g = make_grid(-50, 50, 0, 6.3, 101, 9);
    const RatioField rf = ratio_field(c, g);
    MotionSpec m;
    m.vy = 0.05;
    m.v0 = 0.05;
    m.dv = 0.0014;
    const AdiabaticityReport rep = adiabaticity_report(rf, c, m, 1e-7, 50, 4);
    CHECK(rep.used_spread);
    // spread applied along the direction of motion (+y here)
    CHECK(rep.F_spread.general == Catch::Approx(0.5 * 0.0014).epsilon(1e-12));
    CHECK(rep.F_full.general == Catch::Approx(0.5 * 0.05).epsilon(1e-12));
    CHECK(rep.cos_theta == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    // Omega_rms at the crossover: both beams at exp(-1/400) of peak
    const double w = std::sqrt(2.0) * std::exp(-0.25 * 0.25 / 100.0);
    CHECK(rep.omega_rms == Catch::Approx(w).epsilon(1e-12));
    CHECK(rep.residual_detuning == 0.0);
    CHECK(rep.omega21 == Catch::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("SI adapter reproduces the order-of-magnitude survival estimate") {
    SiAdiabaticity si;
    si.k_si = 1e7;
    si.v_si = 0.01; // 1 cm/s
    si.dv_si = 0.0014;
    si.omega_lo = 1e7;
    si.omega_hi = 1e8;
    si.tau3_si = 1e-7;
    const auto r = si.evaluate();

    CHECK(r.F_general == Catch::Approx(5e4).epsilon(1e-12));
    CHECK(r.F_paper == Catch::Approx(std::sqrt(0.5) * 1e5).epsilon(1e-12));
    CHECK(r.cos_theta == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));

    // adiabatic across the whole Omega range
    CHECK(r.ratio_lo < 1e-2);
    CHECK(r.ratio_hi < r.ratio_lo);

    // survival up to ~a second at the strong-drive end
    CHECK(r.tau_D_hi == Catch::Approx(0.2).epsilon(1e-10));
    CHECK(r.tau_D_hi >= 0.1);
    CHECK(r.tau_D_lo == Catch::Approx(0.002).epsilon(1e-10));

    // velocity-spread mode (compensated waveguide): ~10 s
    CHECK(r.tau_D_spread_hi == Catch::Approx(10.2).epsilon(0.01));
}

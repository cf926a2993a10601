#pragma once

// Effective gauge structure of the dark state: vector potential
// A = -hbar sin^2(theta) grad S, magnetic field B = curl A, scalar
// potential, compensating trap, derived magnetic scales and flux
// integrals. Sign convention: B is the curl of A, which for dx > 0 gives
// B_z = -hbar k / (4 a cosh^2((x-x0)/2a)) < 0. (The planar-field equation
// as printed in the source material carries the opposite sign; the curl
// convention is the internally consistent one and is what verify reports.)

#include <cmath>
#include <numbers>
#include <string>

#include "gaugesim/beams.hpp"
#include "gaugesim/grid.hpp"
#include "gaugesim/stencil.hpp"
#include "gaugesim/units.hpp"

namespace gaugesim {

struct GaugeFields {
    VectorField2D A;    // units hbar k
    ScalarField2D B;    // z-component, units hbar k^2
    ScalarField2D V_eff; // units hbar^2 k^2 / m
    ScalarField2D V1, V2;
    double omega21 = 0.0;
};

struct FieldScales {
    double B0 = 0.0;        // peak field magnitude hbar k / 4a
    double ell_B = 0.0;     // magnetic length sqrt(hbar/B0) = 2 sqrt(a/k)
    double omega_c = 0.0;   // cyclotron frequency B0/m
    double omega_rec = 0.0; // recoil frequency hbar k^2 / 2m
    double omega_ext = 0.0; // compensating trap frequency
    double flux_area = 0.0; // area per flux quantum, 2 pi hbar / B0
};

// A = -hbar sin^2(theta) grad S. When the ratio field is planar (S = k y)
// the exact gradient (0, k) is used; otherwise grad S comes from the
// 4th-order stencil.
inline VectorField2D vector_potential(const RatioField& rf) {
    const Grid2D& grid = rf.sin2theta.grid;
    VectorField2D a(grid);
    constexpr double hbar = UnitSystem::hbar;
    if (rf.planar_k) {
        const double k = *rf.planar_k;
        for (std::size_t n = 0; n < grid.size(); ++n) {
            a.x[n] = 0.0;
            a.y[n] = -hbar * rf.sin2theta.values[n] * k;
        }
    } else {
        const VectorField2D grad_s = gradient(rf.phase_S);
        for (std::size_t n = 0; n < grid.size(); ++n) {
            const double s2 = rf.sin2theta.values[n];
            a.x[n] = -hbar * s2 * grad_s.x[n];
            a.y[n] = -hbar * s2 * grad_s.y[n];
        }
    }
    return a;
}

inline ScalarField2D magnetic_field_numeric(const VectorField2D& a) { return curl_z(a); }

// Closed-form B for an equal-waist, equal-amplitude Gaussian pair.
// Valid per y-row with a = a(y); dx = 0 gives B == 0.
inline ScalarField2D magnetic_field_analytic(const BeamPairConfig& cfg, const Grid2D& grid) {
    cfg.validate();
    if (!cfg.equal_waists() || !cfg.equal_amplitudes())
        throw UnsupportedConfigError(
            "analytic magnetic field requires equal-waist, equal-amplitude Gaussian beams");
    ScalarField2D b(grid);
    if (cfg.delta_x() == 0.0) return b;
    constexpr double hbar = UnitSystem::hbar;
    const double k = cfg.k_total();
    const double x0 = cfg.x0();
    for (int j = 0; j < grid.ny; ++j) {
        const double a = *relative_width(cfg, grid.y(j));
        for (int i = 0; i < grid.nx; ++i) {
            const double sech = 1.0 / std::cosh((grid.x(i) - x0) / (2.0 * a));
            b.at(i, j) = -hbar * k / (4.0 * a) * sech * sech;
        }
    }
    return b;
}

// General effective potential:
//   V_eff = V_ext + (hbar^2/2m) [ |z|^2 (grad S)^2 + (grad |z|)^2 ] / (1+|z|^2)^2
//   V_ext = [ V1 + |z|^2 (V2 + hbar omega21) ] / (1 + |z|^2)
// evaluated in the overflow-safe mixing-angle form
//   V_ext = cos^2 V1 + sin^2 (V2 + hbar omega21),
//   gauge term = (hbar^2/2m) [ sin^2 cos^2 (grad S)^2 + cos^4 (grad |z|)^2 ].
inline ScalarField2D scalar_potential(const RatioField& rf, const ScalarField2D& v1,
                                      const ScalarField2D& v2, double omega21) {
    const Grid2D& grid = rf.sin2theta.grid;
    if (!(v1.grid == grid) || !(v2.grid == grid))
        throw ConfigError("V1/V2 grids do not match the ratio field grid");
    constexpr double hbar = UnitSystem::hbar;
    constexpr double mass = UnitSystem::mass;

    const ScalarField2D dzx = partial_x(rf.abs_zeta);
    const ScalarField2D dzy = partial_y(rf.abs_zeta);

    ScalarField2D v(grid);
    const bool planar = rf.planar_k.has_value();
    const double kp = planar ? *rf.planar_k : 0.0;
    VectorField2D grad_s;
    if (!planar) grad_s = gradient(rf.phase_S);

    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double s2 = rf.sin2theta.values[n];
        const double c2 = 1.0 - s2;
        const double gs2 = planar ? kp * kp : grad_s.x[n] * grad_s.x[n] + grad_s.y[n] * grad_s.y[n];
        const double gz2 = dzx.values[n] * dzx.values[n] + dzy.values[n] * dzy.values[n];
        const double gauge = 0.5 * hbar * hbar / mass * (s2 * c2 * gs2 + c2 * c2 * gz2);
        const double vext = c2 * v1.values[n] + s2 * (v2.values[n] + hbar * omega21);
        v.values[n] = vext + gauge;
    }
    return v;
}

inline ScalarField2D scalar_potential(const RatioField& rf, double omega21 = 0.0) {
    const ScalarField2D zero(rf.sin2theta.grid);
    return scalar_potential(rf, zero, zero, omega21);
}

// Closed-form gauge-induced term of V_eff for the Gaussian pair
// (external potentials excluded):
//   (hbar^2 k^2 / 2m) (1 + 1/(4 a^2 k^2)) / (4 cosh^2((x-x0)/2a)).
// dx = 0 degenerates to the constant hbar^2 k^2 / 8m.
inline ScalarField2D scalar_potential_gauge_analytic(const BeamPairConfig& cfg,
                                                     const Grid2D& grid) {
    cfg.validate();
    if (!cfg.equal_waists() || !cfg.equal_amplitudes())
        throw UnsupportedConfigError(
            "analytic scalar potential requires equal-waist, equal-amplitude Gaussian beams");
    constexpr double hbar = UnitSystem::hbar;
    constexpr double mass = UnitSystem::mass;
    const double k = cfg.k_total();
    ScalarField2D v(grid);
    if (cfg.delta_x() == 0.0) {
        const double c = hbar * hbar * k * k / (8.0 * mass);
        for (auto& x : v.values) x = c;
        return v;
    }
    const double x0 = cfg.x0();
    for (int j = 0; j < grid.ny; ++j) {
        const double a = *relative_width(cfg, grid.y(j));
        const double amp =
            0.5 * hbar * hbar * k * k / mass * (1.0 + 1.0 / (4.0 * a * a * k * k)) / 4.0;
        for (int i = 0; i < grid.nx; ++i) {
            const double sech = 1.0 / std::cosh((grid.x(i) - x0) / (2.0 * a));
            v.at(i, j) = amp * sech * sech;
        }
    }
    return v;
}

// omega_ext = (hbar k / 4 a m) sqrt(1 + 1/(4 a^2 k^2)); cancels the
// quadratic term of the gauge scalar potential at x0.
inline double compensating_trap_frequency(double a, double k, double mass = UnitSystem::mass) {
    if (!(a > 0)) throw ConfigError("compensating trap requires a > 0");
    if (!(k > 0)) throw ConfigError("compensating trap requires k > 0");
    const double ak = a * k;
    return UnitSystem::hbar * k / (4.0 * a * mass) * std::sqrt(1.0 + 1.0 / (4.0 * ak * ak));
}

struct CompensatingTrap {
    double omega_ext = 0.0;
    ScalarField2D profile; // (m omega_ext^2 / 2)(x - x0)^2
};

inline CompensatingTrap compensating_trap(double a, double k, double mass, double x0,
                                          const Grid2D& grid) {
    CompensatingTrap trap;
    trap.omega_ext = compensating_trap_frequency(a, k, mass);
    trap.profile = ScalarField2D(grid);
    const double c = 0.5 * mass * trap.omega_ext * trap.omega_ext;
    for (int i = 0; i < grid.nx; ++i) {
        const double d = grid.x(i) - x0;
        for (int j = 0; j < grid.ny; ++j) trap.profile.at(i, j) = c * d * d;
    }
    return trap;
}

inline FieldScales field_scales(double a, double k, double mass = UnitSystem::mass) {
    if (!(a > 0)) throw ConfigError("field scales require a > 0 (pass |a|)");
    if (!(k > 0)) throw ConfigError("field scales require k > 0");
    if (!(mass > 0)) throw ConfigError("field scales require m > 0");
    constexpr double hbar = UnitSystem::hbar;
    FieldScales s;
    s.B0 = hbar * k / (4.0 * a);
    s.ell_B = std::sqrt(hbar / s.B0);
    s.omega_c = s.B0 / mass;
    s.omega_rec = 0.5 * hbar * k * k / mass;
    s.omega_ext = compensating_trap_frequency(a, k, mass);
    s.flux_area = 2.0 * std::numbers::pi * hbar / s.B0;
    return s;
}

struct FluxResult {
    double flux = 0.0;
    double n_quanta = 0.0;
};

// Trapezoid quadrature of B_z over [x_lo,x_hi] x [y_lo,y_hi]. The
// rectangle is snapped inward to grid lines; requested ranges must lie
// within the grid.
inline FluxResult flux_through(const ScalarField2D& b, double x_lo, double x_hi, double y_lo,
                               double y_hi) {
    const Grid2D& g = b.grid;
    const double tol = 1e-9;
    if (x_lo < g.x_min - tol * std::abs(g.dx) || x_hi > g.x_max + tol * std::abs(g.dx) ||
        y_lo < g.y_min - tol * std::abs(g.dy) || y_hi > g.y_max + tol * std::abs(g.dy))
        throw std::out_of_range("flux range [" + std::to_string(x_lo) + "," +
                                std::to_string(x_hi) + "]x[" + std::to_string(y_lo) + "," +
                                std::to_string(y_hi) + "] outside grid");
    const int i0 = static_cast<int>(std::ceil((x_lo - g.x_min) / g.dx - tol));
    const int i1 = static_cast<int>(std::floor((x_hi - g.x_min) / g.dx + tol));
    const int j0 = static_cast<int>(std::ceil((y_lo - g.y_min) / g.dy - tol));
    const int j1 = static_cast<int>(std::floor((y_hi - g.y_min) / g.dy + tol));

    FluxResult r;
    if (i1 <= i0 || j1 <= j0) return r; // zero-area rectangle
    double acc = 0.0;
    for (int i = i0; i <= i1; ++i) {
        const double wx = (i == i0 || i == i1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int j = j0; j <= j1; ++j) {
            const double wy = (j == j0 || j == j1) ? 0.5 : 1.0;
            row += wy * b.at(i, j);
        }
        acc += wx * row;
    }
    r.flux = acc * g.dx * g.dy;
    r.n_quanta = r.flux / (2.0 * std::numbers::pi * UnitSystem::hbar);
    return r;
}

// Convenience builder used by the CLI and verify paths.
inline GaugeFields compute_gauge_fields(const RatioField& rf, const ScalarField2D& v1,
                                        const ScalarField2D& v2, double omega21) {
    GaugeFields f;
    f.A = vector_potential(rf);
    f.B = magnetic_field_numeric(f.A);
    f.V1 = v1;
    f.V2 = v2;
    f.omega21 = omega21;
    f.V_eff = scalar_potential(rf, v1, v2, omega21);
    return f;
}

} // namespace gaugesim

#pragma once

// Validity of the dark-state (adiabatic) approximation: the nonadiabatic
// coupling rate F for a moving atom, the dark-state lifetime
// tau_D = tau_3 Omega^2 / F^2, and Doppler compensation of a central
// velocity.
//
// Two F forms are always computed and never silently merged:
//   F_general = |grad(zeta) . v| / (1 + |zeta|^2)
//   F_paper^2 = cos^2(theta) [ (v_x d|zeta|/dx)^2 + (|zeta| k v_y)^2 ]
// For the planar configuration F_general = cos(theta) * F_paper; the
// report carries that ratio explicitly.

#include <cmath>
#include <limits>

#include "gaugesim/beams.hpp"
#include "gaugesim/stencil.hpp"
#include "gaugesim/units.hpp"

namespace gaugesim {

struct MotionSpec {
    double vx = 0.0; // units hbar k / m
    double vy = 0.0;
    double v0 = 0.0; // central velocity along y
    double dv = 0.0; // velocity spread (scalar, >= 0)
};

struct RatePair {
    double general = 0.0;
    double paper = 0.0;
};

// F at grid node (i,j). grad|zeta| comes from the stencil; grad S is the
// exact planar (0,k) when available.
inline RatePair nonadiabatic_rate(const RatioField& rf, const BeamPairConfig& cfg, double vx,
                                  double vy, int i, int j) {
    const Grid2D& grid = rf.abs_zeta.grid;
    if (i < 0 || i >= grid.nx || j < 0 || j >= grid.ny)
        throw std::out_of_range("nonadiabatic_rate: node outside grid");
    const double k = rf.planar_k ? *rf.planar_k : cfg.k_total();
    const double z = rf.abs_zeta.at(i, j);
    const double dzdx = partial_x_at(rf.abs_zeta, i, j);
    const double dzdy = partial_y_at(rf.abs_zeta, i, j);
    const double s2 = rf.sin2theta.at(i, j);
    const double c2 = 1.0 - s2;

    // |grad(zeta) . v|^2 = (v . grad|zeta|)^2 + (|zeta| k v_y)^2
    const double amp_term = vx * dzdx + vy * dzdy;
    const double phase_term = z * k * vy;
    const double r = std::hypot(amp_term, phase_term);

    RatePair f;
    f.general = c2 * r;            // 1/(1+|zeta|^2) = cos^2(theta)
    f.paper = std::sqrt(c2) * std::hypot(vx * dzdx, phase_term);
    return f;
}

// tau_D = tau_3 Omega^2 / F^2; F = 0 returns the infinite-lifetime
// sentinel (+inf).
inline double dark_lifetime(double f, double omega_rms, double tau3) {
    if (!(omega_rms > 0)) throw ConfigError("dark_lifetime requires Omega > 0");
    if (!(tau3 > 0)) throw ConfigError("dark_lifetime requires tau_3 > 0");
    if (f == 0.0) return std::numeric_limits<double>::infinity();
    const double q = omega_rms / f;
    return tau3 * q * q;
}

// Two-photon detuning that compensates the Doppler shift of a central
// velocity v0 along y: omega21 = -(k_p + k_c) v0.
inline double doppler_compensation(double v0, double kp, double kc) { return -(kp + kc) * v0; }

// Residual two-photon detuning seen by an atom moving at exactly v0 after
// compensation; zero by construction.
inline double residual_two_photon_detuning(double omega21, double k_total, double v0) {
    return omega21 + k_total * v0;
}

// rms Rabi frequency Omega = sqrt(|Omega_p|^2 + |Omega_c|^2) at a point.
inline double rms_rabi(const BeamPairConfig& cfg, double x, double y) {
    const double p = rabi_profile(cfg.probe, x, y, cfg.width_law);
    const double c = rabi_profile(cfg.control, x, y, cfg.width_law);
    return std::hypot(p, c);
}

struct AdiabaticityReport {
    RatePair F_full;   // F at the configured velocity
    RatePair F_spread; // F with |v| replaced by the spread dv (if dv > 0)
    double omega_rms = 0.0;
    double ratio_general = 0.0; // F_general / Omega (effective F)
    double ratio_paper = 0.0;
    double cos_theta = 0.0; // F_general / F_paper at the evaluation point
    double omega21 = 0.0;   // Doppler compensation for v0
    double residual_detuning = 0.0;
    double tau_3 = 0.0;
    double tau_D = 0.0; // from the conservative (larger) F_paper
    bool used_spread = false;
};

// Report at grid node (i,j). When a velocity spread is configured the
// effective F uses dv (applied along the direction of motion, or +y for
// an atom at rest); this is the compensated-waveguide scenario.
inline AdiabaticityReport adiabaticity_report(const RatioField& rf, const BeamPairConfig& cfg,
                                              const MotionSpec& motion, double tau3, int i,
                                              int j) {
    AdiabaticityReport rep;
    rep.tau_3 = tau3;
    rep.F_full = nonadiabatic_rate(rf, cfg, motion.vx, motion.vy, i, j);
    rep.used_spread = motion.dv > 0.0;
    if (rep.used_spread) {
        const double vn = std::hypot(motion.vx, motion.vy);
        double ex = 0.0, ey = 1.0;
        if (vn > 0.0) {
            ex = motion.vx / vn;
            ey = motion.vy / vn;
        }
        rep.F_spread = nonadiabatic_rate(rf, cfg, motion.dv * ex, motion.dv * ey, i, j);
    }
    const RatePair& eff = rep.used_spread ? rep.F_spread : rep.F_full;

    const Grid2D& grid = rf.abs_zeta.grid;
    rep.omega_rms = rms_rabi(cfg, grid.x(i), grid.y(j));
    rep.ratio_general = eff.general / rep.omega_rms;
    rep.ratio_paper = eff.paper / rep.omega_rms;
    rep.cos_theta = std::sqrt(1.0 - rf.sin2theta.at(i, j));
    rep.omega21 = doppler_compensation(motion.v0, cfg.probe.k, cfg.control.k);
    rep.residual_detuning = residual_two_photon_detuning(rep.omega21, cfg.k_total(), motion.v0);
    rep.tau_D = dark_lifetime(eff.paper, rep.omega_rms, tau3);
    return rep;
}

// SI-adapter estimate for an atom crossing the beam overlap at |zeta| = 1
// (mixing angle 45 degrees), moving along y. Everything in SI units:
// k [1/m], v [m/s], Omega and F [1/s], times [s].
struct SiAdiabaticity {
    double k_si = 1e7;
    double v_si = 0.01;
    double dv_si = 0.0;
    double omega_lo = 1e7;
    double omega_hi = 1e8;
    double tau3_si = 1e-7;

    struct Result {
        double F_general = 0.0;
        double F_paper = 0.0;
        double cos_theta = 0.0;
        double ratio_lo = 0.0;  // F_paper / Omega at Omega = omega_lo
        double ratio_hi = 0.0;
        double tau_D_lo = 0.0;  // tau_D at Omega = omega_lo
        double tau_D_hi = 0.0;
        double F_spread_general = 0.0;
        double F_spread_paper = 0.0;
        double tau_D_spread_hi = 0.0;
    };

    Result evaluate() const {
        Result r;
        // At |zeta| = 1: cos^2(theta) = 1/2.
        const double c2 = 0.5;
        r.cos_theta = std::sqrt(c2);
        const double rate = k_si * v_si; // |zeta| k v_y with |zeta| = 1
        r.F_general = c2 * rate;
        r.F_paper = r.cos_theta * rate;
        r.ratio_lo = r.F_paper / omega_lo;
        r.ratio_hi = r.F_paper / omega_hi;
        r.tau_D_lo = dark_lifetime(r.F_paper, omega_lo, tau3_si);
        r.tau_D_hi = dark_lifetime(r.F_paper, omega_hi, tau3_si);
        if (dv_si > 0.0) {
            const double srate = k_si * dv_si;
            r.F_spread_general = c2 * srate;
            r.F_spread_paper = r.cos_theta * srate;
            r.tau_D_spread_hi = dark_lifetime(r.F_spread_paper, omega_hi, tau3_si);
        }
        return r;
    }
};

} // namespace gaugesim

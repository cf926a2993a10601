#pragma once

// Cyclotron-orbit and Hall-drift numerical experiments on the frozen-
// paraxial gauge fields. Both verify derived field scales: the fitted
// orbit period against 2 pi / omega_c and the steady transverse drift
// against |F|/B0.

#include <cmath>
#include <numbers>
#include <vector>

#include "gaugesim/beams.hpp"
#include "gaugesim/dynamics.hpp"
#include "gaugesim/fitting.hpp"
#include "gaugesim/gauge.hpp"
#include "gaugesim/spectrum.hpp"

namespace gaugesim {

// Per-x-node samples of A_y and V_total (gauge scalar term + trap) for a
// 2D grid, reusing the 1D landau sampling formulas.
struct FrozenFields {
    std::vector<double> a_y;
    std::vector<double> v;
    FieldScales scales;
    double x0 = 0.0;
};

inline FrozenFields sample_frozen_fields(const BeamPairConfig& cfg, TrapKind trap,
                                         const Grid2D& grid, double custom_omega = 0.0,
                                         double mass = UnitSystem::mass) {
    cfg.validate();
    if (cfg.width_law != WidthLaw::frozen)
        throw UnsupportedConfigError("dynamics requires the frozen paraxial width law");
    const auto a_opt = relative_width(cfg, 0.0);
    constexpr double hbar = UnitSystem::hbar;
    const double k = cfg.k_total();
    const double x0 = cfg.x0();

    FrozenFields f;
    f.x0 = x0;
    f.a_y.resize(grid.nx);
    f.v.resize(grid.nx);
    if (!a_opt) {
        // delta_x = 0: B == 0, flat gauge scalar term
        const double v0 = hbar * hbar * k * k / (8.0 * mass);
        for (int i = 0; i < grid.nx; ++i) {
            f.a_y[i] = -0.5 * hbar * k;
            f.v[i] = v0;
        }
        f.scales = FieldScales{};
        return f;
    }
    const double a = *a_opt;
    f.scales = field_scales(std::abs(a), k, mass);
    const double c_amp =
        0.5 * hbar * hbar * k * k / mass * (1.0 + 1.0 / (4.0 * a * a * k * k)) / 4.0;
    double omega = 0.0;
    if (trap == TrapKind::compensated) omega = f.scales.omega_ext;
    if (trap == TrapKind::custom) omega = custom_omega;
    for (int i = 0; i < grid.nx; ++i) {
        const double u = (grid.x(i) - x0) / a;
        const double s2 = u >= 0.0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u));
        const double sech = 1.0 / std::cosh(0.5 * u);
        f.a_y[i] = -hbar * k * s2;
        f.v[i] = c_amp * sech * sech +
                 0.5 * mass * omega * omega * (grid.x(i) - x0) * (grid.x(i) - x0);
    }
    return f;
}

struct CyclotronParams {
    BeamPairConfig beams;
    Grid2D grid;
    double packet_sigma = 0.0;   // 0: ell_B / sqrt(2)
    double orbit_radius = 4.0;   // sets p_x = radius * B0
    double periods = 2.2;
    double dt = 0.5;
    int sample_every = 10;
};

struct CyclotronResult {
    Trajectory traj;
    double fitted_period = 0.0;
    double expected_period = 0.0;
    bool nonuniform_warning = false; // orbit left |x-x0| <= a/2
};

inline CyclotronResult run_cyclotron(const CyclotronParams& p) {
    const FrozenFields f = sample_frozen_fields(p.beams, TrapKind::compensated, p.grid);
    const double a = std::abs(*relative_width(p.beams, 0.0));
    const double b0 = f.scales.B0;
    const double sigma = p.packet_sigma > 0 ? p.packet_sigma : f.scales.ell_B / std::sqrt(2.0);
    const double px = p.orbit_radius * b0;
    const double py = -0.5 * UnitSystem::hbar * p.beams.k_total(); // guiding center at x0

    CyclotronResult r;
    r.expected_period = 2.0 * std::numbers::pi / f.scales.omega_c;
    if (p.orbit_radius > 0.5 * a) r.nonuniform_warning = true;

    EvolutionConfig evo;
    evo.dt = p.dt;
    evo.sample_every = p.sample_every;
    evo.track_energy = false;
    evo.n_steps = static_cast<int>(std::ceil(p.periods * r.expected_period / p.dt));

    WavepacketState st =
        init_gaussian_packet(p.grid, f.x0, 0.5 * (p.grid.y_min + p.grid.y_max), sigma, sigma, px, py);
    SplitStepEvolver ev(p.grid, f.a_y, f.v, evo);
    r.traj = ev.evolve(st, evo.n_steps);
    r.fitted_period = period_from_zero_crossings(r.traj.t, r.traj.mean_x);

    double max_exc = 0.0;
    for (double mx : r.traj.mean_x) max_exc = std::max(max_exc, std::abs(mx - f.x0));
    if (max_exc > 0.5 * a) r.nonuniform_warning = true;
    return r;
}

struct HallParams {
    BeamPairConfig beams;
    Grid2D grid;
    double force_y = 1e-4;
    double periods = 1.6;
    double dt = 0.5;
    int sample_every = 10;
};

struct HallResult {
    Trajectory traj;
    double drift_velocity = 0.0; // fitted d<x>/dt
    double expected_speed = 0.0; // |F|/B0
    bool nonuniform_warning = false;
};

// Packet starts at rest at x0 (p_y tuned to the local A_y); the force
// produces a cycloid whose secular slope is the Hall drift. The fit is a
// 4-parameter linear model with the cyclotron ripple at omega_c included,
// restricted to samples with |<x>-x0| <= a/3.
inline HallResult run_hall_drift(const HallParams& p) {
    const FrozenFields f = sample_frozen_fields(p.beams, TrapKind::compensated, p.grid);
    const double a = std::abs(*relative_width(p.beams, 0.0));
    HallResult r;
    r.expected_speed = std::abs(p.force_y) / f.scales.B0;

    EvolutionConfig evo;
    evo.dt = p.dt;
    evo.force_y = p.force_y;
    evo.sample_every = p.sample_every;
    evo.track_energy = false;
    const double period = 2.0 * std::numbers::pi / f.scales.omega_c;
    evo.n_steps = static_cast<int>(std::ceil(p.periods * period / p.dt));

    const double sigma = f.scales.ell_B / std::sqrt(2.0);
    const double py = -0.5 * UnitSystem::hbar * p.beams.k_total();
    WavepacketState st =
        init_gaussian_packet(p.grid, f.x0, 0.5 * (p.grid.y_min + p.grid.y_max), sigma, sigma, 0.0, py);
    SplitStepEvolver ev(p.grid, f.a_y, f.v, evo);
    r.traj = ev.evolve(st, evo.n_steps);

    std::vector<double> ts, xs;
    double max_exc = 0.0;
    for (std::size_t i = 0; i < r.traj.t.size(); ++i) {
        const double exc = std::abs(r.traj.mean_x[i] - f.x0);
        max_exc = std::max(max_exc, exc);
        if (exc <= a / 3.0) {
            ts.push_back(r.traj.t[i]);
            xs.push_back(r.traj.mean_x[i]);
        }
    }
    if (max_exc > 0.5 * a) r.nonuniform_warning = true;
    if (p.force_y == 0.0) {
        // no ripple frequency content to fit against; plain linear fit
        const auto fit = fit_drift_with_ripple(ts, xs, f.scales.omega_c);
        r.drift_velocity = fit.slope;
        return r;
    }
    const auto fit = fit_drift_with_ripple(ts, xs, f.scales.omega_c);
    r.drift_velocity = fit.slope;
    return r;
}

} // namespace gaugesim

#pragma once

// Two offset counterpropagating Gaussian beams and the ratio field
// zeta = |zeta| e^{iS} that parameterizes the dark state. The probe runs
// along +y, the control along -y, so S = (k_p + k_c) y on the whole grid.

#include <cmath>
#include <optional>
#include <string>

#include "gaugesim/errors.hpp"
#include "gaugesim/grid.hpp"
#include "gaugesim/units.hpp"

namespace gaugesim {

enum class WidthLaw {
    frozen,           // sigma(y) = sigma0
    paraxial,         // sigma(y) = sigma0 sqrt(1 + (y/y_R)^2)
    paraxial_printed, // sigma(y) = sigma0 sqrt(1 + y/y_R); comparison only
};

struct GaussianBeamParams {
    double omega0 = 1.0;  // Rabi amplitude, units of energy/hbar
    double sigma0 = 10.0; // waist
    double center_x = 0.0;
    int propagation_sign = +1; // +1 probe (+y), -1 control (-y)
    double k = 0.5;            // wavenumber of this beam

    void validate(const std::string& who) const {
        if (!(omega0 > 0)) throw ConfigError(who + ".omega0 must be positive");
        if (!(sigma0 > 0)) throw ConfigError(who + ".sigma0 must be positive");
        if (!(k > 0)) throw ConfigError(who + ".k must be positive");
        if (propagation_sign != 1 && propagation_sign != -1)
            throw ConfigError(who + ".propagation_sign must be +1 or -1");
    }

    // Rayleigh range pi sigma0^2 / lambda with lambda = 2 pi / k.
    double rayleigh_range() const { return 0.5 * k * sigma0 * sigma0; }
};

// sigma(y) under the chosen width law.
inline double beam_width(const GaussianBeamParams& b, double y, WidthLaw law) {
    switch (law) {
        case WidthLaw::frozen:
            return b.sigma0;
        case WidthLaw::paraxial: {
            const double u = y / b.rayleigh_range();
            return b.sigma0 * std::sqrt(1.0 + u * u);
        }
        case WidthLaw::paraxial_printed: {
            const double u = y / b.rayleigh_range();
            if (u < -1.0)
                throw ConfigError("paraxial_printed width undefined for y < -y_R (y/y_R = " +
                                  std::to_string(u) + ")");
            return b.sigma0 * std::sqrt(1.0 + u);
        }
    }
    return b.sigma0;
}

// Omega0 exp(-(x - x_j)^2 / sigma(y)^2).
inline double rabi_profile(const GaussianBeamParams& b, double x, double y,
                           WidthLaw law = WidthLaw::frozen) {
    const double s = beam_width(b, y, law);
    const double d = (x - b.center_x) / s;
    return b.omega0 * std::exp(-d * d);
}

struct BeamPairConfig {
    GaussianBeamParams probe;   // +y
    GaussianBeamParams control; // -y
    WidthLaw width_law = WidthLaw::frozen;

    BeamPairConfig() {
        probe.propagation_sign = +1;
        probe.center_x = 0.5;
        control.propagation_sign = -1;
        control.center_x = -0.5;
    }

    void validate() const {
        probe.validate("probe");
        control.validate("control");
        if (probe.propagation_sign != +1) throw ConfigError("probe must propagate along +y");
        if (control.propagation_sign != -1) throw ConfigError("control must propagate along -y");
        if (!(k_total() > 0)) throw ConfigError("k_p + k_c must be positive");
    }

    double x0() const { return 0.5 * (probe.center_x + control.center_x); }
    double delta_x() const { return probe.center_x - control.center_x; }
    double k_total() const { return probe.k + control.k; }
    bool equal_waists() const { return probe.sigma0 == control.sigma0; }
    bool equal_amplitudes() const { return probe.omega0 == control.omega0; }

    BeamPairConfig swapped() const {
        BeamPairConfig s = *this;
        std::swap(s.probe.omega0, s.control.omega0);
        std::swap(s.probe.sigma0, s.control.sigma0);
        std::swap(s.probe.center_x, s.control.center_x);
        std::swap(s.probe.k, s.control.k);
        return s;
    }
};

// Relative width a(y) = sigma(y)^2 / (4 dx). Negative when dx < 0 (the
// field just reverses sign). nullopt is the infinite-width sentinel for
// dx = 0, which means B == 0 identically.
inline std::optional<double> relative_width(const BeamPairConfig& cfg, double y) {
    if (cfg.delta_x() == 0.0) return std::nullopt;
    if (!cfg.equal_waists())
        throw UnsupportedConfigError("relative width a(y) requires equal beam waists");
    const double s = beam_width(cfg.probe, y, cfg.width_law);
    return s * s / (4.0 * cfg.delta_x());
}

// |zeta|, S and sin^2(theta) sampled on a grid. planar_k is set when the
// phase is exactly S = k y (always true for a counterpropagating pair);
// downstream code may then use the exact gradient (0, k) instead of a
// stencil.
struct RatioField {
    ScalarField2D abs_zeta;
    ScalarField2D phase_S;
    ScalarField2D sin2theta;
    std::optional<double> planar_k;
};

namespace detail {

// sin^2(theta) = |zeta|^2/(1+|zeta|^2) evaluated from log|zeta| without
// overflow: the logistic of 2 log|zeta|.
inline double sin2_from_log_abs_zeta(double log_abs) {
    const double t = 2.0 * log_abs;
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

} // namespace detail

// Ratio field of a Gaussian pair. The quotient of the two rabi_profile
// values is evaluated as the exponent difference, which is the same
// quotient without underflow in the far tails.
inline RatioField ratio_field(const BeamPairConfig& cfg, const Grid2D& grid) {
    cfg.validate();
    RatioField rf;
    rf.abs_zeta = ScalarField2D(grid);
    rf.phase_S = ScalarField2D(grid);
    rf.sin2theta = ScalarField2D(grid);
    const double k = cfg.k_total();
    rf.planar_k = k;

    const double log_amp = std::log(cfg.probe.omega0) - std::log(cfg.control.omega0);
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        for (int j = 0; j < grid.ny; ++j) {
            const double y = grid.y(j);
            const double sp = beam_width(cfg.probe, y, cfg.width_law);
            const double sc = beam_width(cfg.control, y, cfg.width_law);
            const double dp = (x - cfg.probe.center_x) / sp;
            const double dc = (x - cfg.control.center_x) / sc;
            const double log_abs = log_amp - dp * dp + dc * dc;
            const std::size_t n = grid.idx(i, j);
            rf.abs_zeta.values[n] = std::exp(log_abs);
            rf.phase_S.values[n] = k * y;
            rf.sin2theta.values[n] = detail::sin2_from_log_abs_zeta(log_abs);
        }
    }
    return rf;
}

// Ratio field from sampled (generalized, non-Gaussian) amplitude profiles.
// Both inputs must be positive; a vanishing control amplitude makes the
// ratio singular at that sample.
inline RatioField ratio_field_from_samples(const ScalarField2D& probe_amp,
                                           const ScalarField2D& control_amp, double k_total) {
    if (!(probe_amp.grid == control_amp.grid))
        throw ConfigError("probe and control amplitude grids differ");
    const Grid2D& grid = probe_amp.grid;
    RatioField rf;
    rf.abs_zeta = ScalarField2D(grid);
    rf.phase_S = ScalarField2D(grid);
    rf.sin2theta = ScalarField2D(grid);
    rf.planar_k = k_total;

    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            const std::size_t n = grid.idx(i, j);
            const double p = probe_amp.values[n];
            const double c = control_amp.values[n];
            if (c == 0.0)
                throw SingularRatioError("control amplitude zero at sample (i=" +
                                         std::to_string(i) + ", j=" + std::to_string(j) + ", x=" +
                                         std::to_string(grid.x(i)) + ", y=" +
                                         std::to_string(grid.y(j)) + ")");
            const double z = std::abs(p / c);
            rf.abs_zeta.values[n] = z;
            rf.phase_S.values[n] = k_total * grid.y(j);
            rf.sin2theta.values[n] = (p * p) / (p * p + c * c);
        }
    }
    return rf;
}

// Closed form |zeta|^2 = exp[(x-x0)/a(y)] for an equal-waist pair.
inline double intensity_ratio_closed_form(const BeamPairConfig& cfg, double x, double y) {
    const auto a = relative_width(cfg, y);
    if (!a) return 1.0; // dx = 0: beams coincide
    if (!cfg.equal_amplitudes())
        throw UnsupportedConfigError("closed-form intensity ratio requires equal amplitudes");
    return std::exp((x - cfg.x0()) / *a);
}

} // namespace gaugesim

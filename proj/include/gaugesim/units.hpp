#pragma once

// Internal unit system: hbar = m = 1 and lengths measured in 1/k, so every
// formula in the field/spectrum/dynamics modules is a pure number. SI
// conversion factors are optional and informational.

#include <optional>

namespace gaugesim {

struct UnitSystem {
    static constexpr double hbar = 1.0;
    static constexpr double mass = 1.0;
    static constexpr double k_unit = 1.0;

    // Metres per internal length unit and seconds per internal time unit.
    std::optional<double> length_si;
    std::optional<double> time_si;

    bool has_si() const { return length_si && time_si; }

    double to_si_length(double x) const { return x * *length_si; }
    double from_si_length(double x) const { return x / *length_si; }
    double to_si_time(double t) const { return t * *time_si; }
    double from_si_time(double t) const { return t / *time_si; }
    double to_si_velocity(double v) const { return v * *length_si / *time_si; }
    double from_si_velocity(double v) const { return v * *time_si / *length_si; }
    double to_si_frequency(double w) const { return w / *time_si; }
    double from_si_frequency(double w) const { return w * *time_si; }
};

// omega_rec = hbar k^2 / 2m for total wavenumber k.
inline double recoil_frequency(double k) {
    return 0.5 * UnitSystem::hbar * k * k / UnitSystem::mass;
}

} // namespace gaugesim

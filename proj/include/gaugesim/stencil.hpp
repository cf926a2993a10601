#pragma once

// Finite-difference operators on Grid2D fields.
//
// First derivatives use the 4th-order 5-point central stencil in the
// interior. The two points nearest each edge use 7-point one-sided
// closures of order 6, so the interior truncation term (h^4 f^(5) / 30)
// dominates everywhere and the documented order of the operators is 4.
// Stencils are applied to (f - f_eval), which makes the derivative of a
// constant field exactly zero.

#include <array>
#include <utility>

#include "gaugesim/grid.hpp"

namespace gaugesim {
namespace detail {

// Numerators over a common denominator of 60 h.
inline constexpr std::array<double, 5> kCentral5 = {5.0, -40.0, 0.0, 40.0, -5.0};
inline constexpr std::array<double, 7> kEdge0 = {-147.0, 360.0, -450.0, 400.0, -225.0, 72.0, -10.0};
inline constexpr std::array<double, 7> kEdge1 = {-10.0, -77.0, 150.0, -100.0, 50.0, -15.0, 2.0};

// First derivative along a strided 1D line of n samples, at index i.
// access(s) must return sample s.
template <typename Access>
inline double d1_line(Access&& f, int i, int n, double h) {
    const double f0 = f(i);
    double acc = 0.0;
    if (i >= 2 && i <= n - 3) {
        const int base = i - 2;
        for (int s = 0; s < 5; ++s) acc += kCentral5[s] * (f(base + s) - f0);
    } else if (i == 0) {
        for (int s = 0; s < 7; ++s) acc += kEdge0[s] * (f(s) - f0);
    } else if (i == 1) {
        for (int s = 0; s < 7; ++s) acc += kEdge1[s] * (f(s) - f0);
    } else if (i == n - 2) { // mirror of kEdge1: negate, reverse
        for (int s = 0; s < 7; ++s) acc -= kEdge1[6 - s] * (f(n - 7 + s) - f0);
    } else { // i == n - 1, mirror of kEdge0
        for (int s = 0; s < 7; ++s) acc -= kEdge0[6 - s] * (f(n - 7 + s) - f0);
    }
    return acc / (60.0 * h);
}

} // namespace detail

// d/dx at a single node (x is the slow index).
inline double partial_x_at(const ScalarField2D& f, int i, int j) {
    return detail::d1_line([&](int s) { return f.at(s, j); }, i, f.grid.nx, f.grid.dx);
}

// d/dy at a single node (y is the fast index).
inline double partial_y_at(const ScalarField2D& f, int i, int j) {
    return detail::d1_line([&](int s) { return f.at(i, s); }, j, f.grid.ny, f.grid.dy);
}

inline ScalarField2D partial_x(const ScalarField2D& f) {
    ScalarField2D out(f.grid);
    for (int i = 0; i < f.grid.nx; ++i)
        for (int j = 0; j < f.grid.ny; ++j) out.at(i, j) = partial_x_at(f, i, j);
    return out;
}

inline ScalarField2D partial_y(const ScalarField2D& f) {
    ScalarField2D out(f.grid);
    for (int i = 0; i < f.grid.nx; ++i)
        for (int j = 0; j < f.grid.ny; ++j) out.at(i, j) = partial_y_at(f, i, j);
    return out;
}

inline VectorField2D gradient(const ScalarField2D& f) {
    VectorField2D out(f.grid);
    for (int i = 0; i < f.grid.nx; ++i)
        for (int j = 0; j < f.grid.ny; ++j) {
            const std::size_t n = f.grid.idx(i, j);
            out.x[n] = partial_x_at(f, i, j);
            out.y[n] = partial_y_at(f, i, j);
        }
    return out;
}

// z-component of the curl: dAy/dx - dAx/dy, same stencil order as gradient.
inline ScalarField2D curl_z(const VectorField2D& a) {
    ScalarField2D ax = a.component_x();
    ScalarField2D ay = a.component_y();
    ScalarField2D out(a.grid);
    for (int i = 0; i < a.grid.nx; ++i)
        for (int j = 0; j < a.grid.ny; ++j)
            out.at(i, j) = partial_x_at(ay, i, j) - partial_y_at(ax, i, j);
    return out;
}

} // namespace gaugesim

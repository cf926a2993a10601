#pragma once

// Small dense least-squares helpers for trajectory and potential fits.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "gaugesim/errors.hpp"

namespace gaugesim {

// Solves the normal equations of min ||B c - y|| for a small set of basis
// functions evaluated per sample. Gaussian elimination with partial
// pivoting; systems here are tiny (<= 6 unknowns).
inline std::vector<double> least_squares(
    const std::vector<std::function<double(double)>>& basis, const std::vector<double>& ts,
    const std::vector<double>& ys) {
    const std::size_t m = basis.size();
    const std::size_t n = ts.size();
    if (ys.size() != n) throw ConfigError("least_squares: size mismatch");
    if (n < m) throw ConfigError("least_squares: underdetermined fit");

    std::vector<double> ata(m * m, 0.0), aty(m, 0.0), row(m);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t a = 0; a < m; ++a) row[a] = basis[a](ts[s]);
        for (std::size_t a = 0; a < m; ++a) {
            aty[a] += row[a] * ys[s];
            for (std::size_t b = 0; b < m; ++b) ata[a * m + b] += row[a] * row[b];
        }
    }
    // in-place elimination
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(ata[r * m + col]) > std::abs(ata[piv * m + col])) piv = r;
        if (ata[piv * m + col] == 0.0) throw SolverError("least_squares: singular normal matrix");
        if (piv != col) {
            for (std::size_t cc = 0; cc < m; ++cc) std::swap(ata[piv * m + cc], ata[col * m + cc]);
            std::swap(aty[piv], aty[col]);
        }
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = ata[r * m + col] / ata[col * m + col];
            for (std::size_t cc = col; cc < m; ++cc) ata[r * m + cc] -= f * ata[col * m + cc];
            aty[r] -= f * aty[col];
        }
    }
    std::vector<double> c(m);
    for (std::size_t r = m; r-- > 0;) {
        double acc = aty[r];
        for (std::size_t cc = r + 1; cc < m; ++cc) acc -= ata[r * m + cc] * c[cc];
        c[r] = acc / ata[r * m + r];
    }
    return c;
}

// Even-polynomial fit v(x) ~ sum_n c_n (x-x0)^{2n}, n = 0..n_even-1.
// Internally scaled to t = (x-x0)/half_width in [-1,1] for conditioning;
// returned coefficients are in x units.
inline std::vector<double> fit_even_polynomial(const std::vector<double>& xs,
                                               const std::vector<double>& vs, double x0,
                                               double half_width, int n_even) {
    std::vector<std::function<double(double)>> basis;
    for (int n = 0; n < n_even; ++n)
        basis.emplace_back([n](double t) { return std::pow(t * t, n); });
    std::vector<double> ts(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ts[i] = (xs[i] - x0) / half_width;
    std::vector<double> c = least_squares(basis, ts, vs);
    for (int n = 0; n < n_even; ++n) c[n] /= std::pow(half_width, 2.0 * n);
    return c;
}

struct DriftRippleFit {
    double offset = 0.0;
    double slope = 0.0;
    double c_cos = 0.0;
    double c_sin = 0.0;
};

// x(t) ~ offset + slope t + c_cos cos(w t) + c_sin sin(w t), linear in the
// coefficients for a fixed ripple frequency w.
inline DriftRippleFit fit_drift_with_ripple(const std::vector<double>& ts,
                                            const std::vector<double>& xs, double omega) {
    std::vector<std::function<double(double)>> basis = {
        [](double) { return 1.0; },
        [](double t) { return t; },
        [omega](double t) { return std::cos(omega * t); },
        [omega](double t) { return std::sin(omega * t); },
    };
    const std::vector<double> c = least_squares(basis, ts, xs);
    return {c[0], c[1], c[2], c[3]};
}

// Oscillation period from the mean spacing of zero crossings of
// x(t) - <x>; crossings located by linear interpolation. Needs at least
// three crossings (one full period).
inline double period_from_zero_crossings(const std::vector<double>& ts,
                                         const std::vector<double>& xs) {
    if (ts.size() != xs.size() || ts.size() < 8)
        throw ConfigError("period fit: too few samples");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());

    std::vector<double> crossings;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double a = xs[i - 1] - mean;
        const double b = xs[i] - mean;
        if (a == 0.0) continue;
        if ((a < 0.0) != (b < 0.0)) {
            const double f = a / (a - b);
            crossings.push_back(ts[i - 1] + f * (ts[i] - ts[i - 1]));
        }
    }
    if (crossings.size() < 3)
        throw SolverError("period fit: fewer than three zero crossings (need >= 1 period)");
    const double span = crossings.back() - crossings.front();
    return 2.0 * span / static_cast<double>(crossings.size() - 1);
}

} // namespace gaugesim

#pragma once

// Single-particle spectrum in the Landau gauge A = (0, A_y(x)). For the
// frozen-paraxial configuration the Hamiltonian separates per y-momentum q:
//
//   H_q = p_x^2/2m + (hbar q - A_y(x))^2/2m + V(x)
//
// discretized with the 2nd-order 3-point kinetic stencil on a 1D x-grid
// and Dirichlet ends, i.e. a symmetric tridiagonal matrix (constant
// off-diagonal plus the diagonal well (hbar q - A_y)^2/2m + V). Lowest
// eigenvalues come from LAPACK dstevr (bisection on an index range).
//
// Convergence: the kinetic dispersion defect is -<p^4> dx^2 / 24, so
// energies converge at 2nd order; at dx = a/1600 halving dx moves the
// lowest three canonical bands by < 1e-8. The general-run default is the
// coarser dx = a/200 (ample for percent-level band checks).

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

#include "gaugesim/beams.hpp"
#include "gaugesim/errors.hpp"
#include "gaugesim/gauge.hpp"
#include "gaugesim/units.hpp"

namespace gaugesim {

enum class TrapKind { none, compensated, custom };

struct Landau1DSetup {
    std::vector<double> x;
    std::vector<double> A_y;
    std::vector<double> V;
    double dx = 0.0;
    double mass = UnitSystem::mass;
};

// Samples A_y and V for a Gaussian pair on a uniform 1D grid spanning
// x0 +- half_span. Requires the frozen width law (y-independent fields).
inline Landau1DSetup make_landau_setup(const BeamPairConfig& cfg, TrapKind trap,
                                       double custom_omega = 0.0, double half_span_over_a = 6.0,
                                       double dx_over_a = 1.0 / 200.0,
                                       double mass = UnitSystem::mass) {
    cfg.validate();
    if (cfg.width_law != WidthLaw::frozen)
        throw UnsupportedConfigError("landau setup requires frozen paraxial width (fields must "
                                     "be y-independent)");
    if (!cfg.equal_waists() || !cfg.equal_amplitudes())
        throw UnsupportedConfigError("landau setup requires equal-waist, equal-amplitude beams");
    const auto a_opt = relative_width(cfg, 0.0);
    if (!a_opt) throw UnsupportedConfigError("landau setup requires delta_x != 0 (B == 0 otherwise)");
    const double a = *a_opt;
    const double k = cfg.k_total();
    const double x0 = cfg.x0();
    constexpr double hbar = UnitSystem::hbar;

    Landau1DSetup s;
    s.mass = mass;
    s.dx = std::abs(a) * dx_over_a;
    const double half_span = std::abs(a) * half_span_over_a;
    const int n = static_cast<int>(std::round(2.0 * half_span / s.dx)) + 1;
    s.x.resize(n);
    s.A_y.resize(n);
    s.V.resize(n);

    const double c_amp = 0.5 * hbar * hbar * k * k / mass * (1.0 + 1.0 / (4.0 * a * a * k * k)) / 4.0;
    double omega = 0.0;
    if (trap == TrapKind::compensated) omega = compensating_trap_frequency(std::abs(a), k, mass);
    if (trap == TrapKind::custom) omega = custom_omega;

    for (int i = 0; i < n; ++i) {
        const double x = (x0 - half_span) + i * s.dx;
        const double u = (x - x0) / a;
        s.x[i] = x;
        // sin^2(theta) = logistic(u), overflow-safe
        const double s2 = u >= 0.0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u));
        s.A_y[i] = -hbar * k * s2;
        const double sech = 1.0 / std::cosh(0.5 * u);
        s.V[i] = c_amp * sech * sech + 0.5 * mass * omega * omega * (x - x0) * (x - x0);
    }
    return s;
}

// Symmetric tridiagonal description of H_q: constant off-diagonal from the
// kinetic stencil plus the per-node diagonal well.
struct TridiagOperator {
    std::vector<double> diag;
    double off = 0.0; // constant sub/super-diagonal
    double dx = 0.0;
};

inline TridiagOperator reduced_1d_hamiltonian(const Landau1DSetup& s, double q) {
    const std::size_t n = s.x.size();
    if (n < 8) throw ConfigError("reduced_1d_hamiltonian: grid too small");
    TridiagOperator h;
    h.dx = s.dx;
    h.off = -0.5 * UnitSystem::hbar * UnitSystem::hbar / (s.mass * s.dx * s.dx);
    h.diag.resize(n);
    const double kin0 = -2.0 * h.off;
    for (std::size_t i = 0; i < n; ++i) {
        const double py = UnitSystem::hbar * q - s.A_y[i];
        h.diag[i] = kin0 + 0.5 * py * py / s.mass + s.V[i];
    }
    return h;
}

namespace detail {

inline void run_dstevr(const TridiagOperator& h, int n_eig, char jobz, std::vector<double>& w,
                       std::vector<double>& z) {
    const lapack_int n = static_cast<lapack_int>(h.diag.size());
    if (n_eig < 1 || n_eig > n) throw ConfigError("eigensolver: invalid band count");
    std::vector<double> d = h.diag;
    std::vector<double> e(n > 1 ? n - 1 : 1, h.off);
    w.assign(n, 0.0);
    if (jobz == 'V') z.assign(static_cast<std::size_t>(n) * n_eig, 0.0);
    std::vector<lapack_int> isuppz(2 * std::max(1, n_eig), 0);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, jobz, 'I', n, d.data(), e.data(), 0.0, 0.0, 1,
        static_cast<lapack_int>(n_eig), 0.0, &m, w.data(), jobz == 'V' ? z.data() : nullptr,
        n, isuppz.data());
    if (info != 0 || m != n_eig)
        throw SolverError("tridiagonal eigensolver failed: info=" + std::to_string(info) +
                          ", found " + std::to_string(m) + "/" + std::to_string(n_eig) +
                          " eigenvalues (n=" + std::to_string(n) + ", dx=" + std::to_string(h.dx) +
                          ", |off|=" + std::to_string(std::abs(h.off)) + ")");
    w.resize(n_eig);
}

} // namespace detail

inline std::vector<double> lowest_eigenvalues(const TridiagOperator& h, int n_eig) {
    std::vector<double> w, z;
    detail::run_dstevr(h, n_eig, 'N', w, z);
    return w;
}

struct EigenPairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors; // grid-normalized: sum v^2 dx = 1
};

inline EigenPairs lowest_eigenpairs(const TridiagOperator& h, int n_eig) {
    std::vector<double> w, z;
    detail::run_dstevr(h, n_eig, 'V', w, z);
    EigenPairs p;
    p.values = w;
    const std::size_t n = h.diag.size();
    const double scale = 1.0 / std::sqrt(h.dx);
    p.vectors.resize(n_eig);
    for (int v = 0; v < n_eig; ++v) {
        p.vectors[v].resize(n);
        for (std::size_t i = 0; i < n; ++i) p.vectors[v][i] = z[v * n + i] * scale;
    }
    return p;
}

struct BandStructure {
    std::vector<double> q_values;
    std::vector<std::vector<double>> energies; // [iq][band], ascending per q
    std::vector<double> x_grid;
    double a = 0.0;
    double k = 0.0;
};

inline BandStructure landau_bands(const Landau1DSetup& setup, const std::vector<double>& q_list,
                                  int n_bands, double a = 0.0, double k = 0.0) {
    if (q_list.empty()) throw ConfigError("landau_bands: empty q list");
    if (n_bands < 1) throw ConfigError("landau_bands: n_bands must be >= 1");
    BandStructure bs;
    bs.q_values = q_list;
    bs.x_grid = setup.x;
    bs.a = a;
    bs.k = k;
    bs.energies.reserve(q_list.size());
    for (double q : q_list)
        bs.energies.push_back(lowest_eigenvalues(reduced_1d_hamiltonian(setup, q), n_bands));
    return bs;
}

struct LandauCheckReport {
    double q_min = 0.0;           // q of the band minimum
    std::vector<double> spacings; // E_{n+1} - E_n at q_min
    double hbar_omega_c = 0.0;
    double omega_ratio = 0.0; // omega_c / omega_ext
};

// Level spacings at the band minimum against hbar omega_c, plus the
// omega_c/omega_ext ratio (expected just below 1).
inline LandauCheckReport landau_check(const BandStructure& bands, const FieldScales& scales) {
    if (bands.energies.empty() || bands.energies.front().size() < 3)
        throw ConfigError("landau_check: need at least 3 bands at the band minimum");
    std::size_t imin = 0;
    for (std::size_t i = 1; i < bands.energies.size(); ++i)
        if (bands.energies[i][0] < bands.energies[imin][0]) imin = i;
    LandauCheckReport rep;
    rep.q_min = bands.q_values[imin];
    const auto& e = bands.energies[imin];
    for (std::size_t n = 0; n + 1 < e.size(); ++n) rep.spacings.push_back(e[n + 1] - e[n]);
    rep.hbar_omega_c = UnitSystem::hbar * scales.omega_c;
    rep.omega_ratio = scales.omega_c / scales.omega_ext;
    return rep;
}

} // namespace gaugesim

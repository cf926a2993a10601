#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

#include "gaugesim/spectrum.hpp"

using namespace gaugesim;

namespace {

BeamPairConfig canonical() {
    BeamPairConfig c;
    c.probe.omega0 = c.control.omega0 = 1.0;
    c.probe.sigma0 = c.control.sigma0 = 10.0;
    c.probe.center_x = 0.5;
    c.control.center_x = -0.5;
    c.probe.k = c.control.k = 0.5;
    return c;
}

Landau1DSetup raw_setup(int n, double dx, double a_const, double (*v)(double)) {
    Landau1DSetup s;
    s.dx = dx;
    s.x.resize(n);
    s.A_y.resize(n);
    s.V.resize(n);
    const double x0 = -0.5 * (n - 1) * dx;
    for (int i = 0; i < n; ++i) {
        s.x[i] = x0 + i * dx;
        s.A_y[i] = a_const;
        s.V[i] = v(s.x[i]);
    }
    return s;
}

// Independent route: Eigen's implicit-QL on the same tridiagonal data.
std::vector<double> eigen_tridiag_oracle(const TridiagOperator& h, int n_eig) {
    const int n = static_cast<int>(h.diag.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(h.diag.data(), n);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, h.off);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> w(n_eig);
    for (int i = 0; i < n_eig; ++i) w[i] = es.eigenvalues()[i];
    return w;
}

} // namespace

TEST_CASE("free particle band is q^2/2") {
    auto zero = [](double) { return 0.0; };
    const Landau1DSetup s = raw_setup(5001, 0.5, 0.0, zero);
    for (double q : {0.3, -0.2, 0.0}) {
        const auto w = lowest_eigenvalues(reduced_1d_hamiltonian(s, q), 1);
        CHECK(w[0] == Catch::Approx(0.5 * q * q).margin(1e-6));
    }
}

TEST_CASE("harmonic oscillator sanity: spacing hbar omega") {
    const double omega = 0.01;
    auto vho = [](double x) { return 0.5 * 0.01 * 0.01 * x * x; };
    const Landau1DSetup s = raw_setup(1601, 0.1, 0.0, vho);
    const auto w = lowest_eigenvalues(reduced_1d_hamiltonian(s, 0.0), 4);
    for (int n = 0; n < 3; ++n)
        CHECK(w[n + 1] - w[n] == Catch::Approx(omega).margin(1e-6));
    CHECK(w[0] == Catch::Approx(0.5 * omega).margin(1e-6));
}

TEST_CASE("kinetic-y well sits at the guiding center") {
    const BeamPairConfig c = canonical();
    const Landau1DSetup s = make_landau_setup(c, TrapKind::none);

    SECTION("q = -k/2 puts the well at x0") {
        std::size_t imin = 0;
        double best = 1e300;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double w = 0.5 * std::pow(-0.5 - s.A_y[i], 2);
            if (w < best) {
                best = w;
                imin = i;
            }
        }
        CHECK(std::abs(s.x[imin]) <= s.dx / 2 + 1e-12);
    }

    SECTION("q = 0 pushes the well to the left edge") {
        std::size_t imin = 0;
        double best = 1e300;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double w = 0.5 * s.A_y[i] * s.A_y[i];
            if (w < best) {
                best = w;
                imin = i;
            }
        }
        CHECK(imin == 0);
    }
}

TEST_CASE("paraxial configuration is rejected") {
    BeamPairConfig c = canonical();
    c.width_law = WidthLaw::paraxial;
    CHECK_THROWS_AS(make_landau_setup(c, TrapKind::compensated), UnsupportedConfigError);
}

TEST_CASE("landau levels match the dense oracle and the analytic ladder") {
    const BeamPairConfig c = canonical();
    // span +-4a around x0, dx = a/100: ample for ell_B = 10 states
    const Landau1DSetup s = make_landau_setup(c, TrapKind::compensated, 0.0, 4.0, 0.01);
    const TridiagOperator h = reduced_1d_hamiltonian(s, -0.5);
    const auto w = lowest_eigenvalues(h, 3);

    const auto oracle = eigen_tridiag_oracle(h, 3);
    for (int n = 0; n < 3; ++n) CHECK(w[n] == Catch::Approx(oracle[n]).margin(1e-9));

    const double c_peak = 0.1250500;
    const double omega_c = 0.01;
    CHECK(w[0] == Catch::Approx(c_peak + 0.5 * omega_c).epsilon(0.02));
    CHECK(w[1] == Catch::Approx(c_peak + 1.5 * omega_c).epsilon(0.02));
    CHECK(w[2] == Catch::Approx(c_peak + 2.5 * omega_c).epsilon(0.02));
    CHECK(w[0] == Catch::Approx(0.1300).epsilon(0.02));
    CHECK(w[1] == Catch::Approx(0.1400).epsilon(0.02));
    CHECK(w[2] == Catch::Approx(0.1500).epsilon(0.02));
}

TEST_CASE("band structure, check report, and free dispersion") {
    const BeamPairConfig c = canonical();
    const FieldScales scales = field_scales(25.0, 1.0);
    const Landau1DSetup s = make_landau_setup(c, TrapKind::compensated, 0.0, 4.0, 0.01);
    std::vector<double> qs;
    for (int m = -4; m <= 4; ++m) qs.push_back(-0.5 + 0.02 * m);
    const BandStructure bands = landau_bands(s, qs, 3, 25.0, 1.0);

    REQUIRE(bands.energies.size() == qs.size());
    for (const auto& e : bands.energies) {
        REQUIRE(e.size() == 3);
        CHECK(e[0] < e[1]);
        CHECK(e[1] < e[2]);
    }

    const LandauCheckReport rep = landau_check(bands, scales);
    CHECK(rep.spacings.size() == 2);
    CHECK(rep.spacings[0] == Catch::Approx(0.01).epsilon(0.02));
    CHECK(rep.spacings[1] == Catch::Approx(0.01).epsilon(0.02));
    CHECK(rep.omega_ratio == Catch::Approx(1.0 / std::sqrt(1.0004)).epsilon(1e-10));
    CHECK(rep.omega_ratio == Catch::Approx(0.9998).margin(1e-4));

    CHECK_THROWS_AS(landau_bands(s, {}, 3), ConfigError);
    CHECK_THROWS_AS(landau_bands(s, qs, 0), ConfigError);

    const BandStructure two = landau_bands(s, qs, 2, 25.0, 1.0);
    CHECK_THROWS_AS(landau_check(two, scales), ConfigError);
}

TEST_CASE("spectrum is invariant under the Landau-gauge shift") {
    const BeamPairConfig c = canonical();
    Landau1DSetup s = make_landau_setup(c, TrapKind::compensated, 0.0, 4.0, 0.01);
    const double q = -0.5;
    const auto w0 = lowest_eigenvalues(reduced_1d_hamiltonian(s, q), 3);

    const double shift = 0.37;
    for (auto& a : s.A_y) a += shift;
    const auto w1 = lowest_eigenvalues(reduced_1d_hamiltonian(s, q + shift), 3);
    for (int n = 0; n < 3; ++n) CHECK(w0[n] == Catch::Approx(w1[n]).margin(1e-10));
}

TEST_CASE("eigenvectors are orthonormal under the grid inner product") {
    const BeamPairConfig c = canonical();
    const Landau1DSetup s = make_landau_setup(c, TrapKind::compensated, 0.0, 3.0, 0.02);
    const EigenPairs p = lowest_eigenpairs(reduced_1d_hamiltonian(s, -0.5), 4);
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < p.vectors[a].size(); ++i)
                dot += p.vectors[a][i] * p.vectors[b][i];
            dot *= s.dx;
            CHECK(dot == Catch::Approx(a == b ? 1.0 : 0.0).margin(1e-10));
        }
}

TEST_CASE("energies converge at 2nd order; documented threshold at a/1600") {
    const BeamPairConfig c = canonical();
    auto bands_at = [&](double dx_over_a) {
        const Landau1DSetup s =
            make_landau_setup(c, TrapKind::compensated, 0.0, 6.0, dx_over_a);
        return lowest_eigenvalues(reduced_1d_hamiltonian(s, -0.5), 3);
    };
    const auto w200 = bands_at(1.0 / 200.0);
    const auto w400 = bands_at(1.0 / 400.0);
    const auto w800 = bands_at(1.0 / 800.0);
    for (int n = 0; n < 3; ++n) {
        const double d1 = std::abs(w400[n] - w200[n]);
        const double d2 = std::abs(w800[n] - w400[n]);
        const double order = std::log2(d1 / d2);
        CHECK(order > 1.7);
        CHECK(order < 2.3);
    }
    const auto w1600 = bands_at(1.0 / 1600.0);
    const auto w3200 = bands_at(1.0 / 3200.0);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(w3200[n] - w1600[n]) < 1e-8);
}

TEST_CASE("2D dense diagonalization confirms the per-q reduction") {
    // Small scaled configuration (a = 1) on a periodic-y box. The 2D
    // Hamiltonian with the antisymmetric FD4 d/dy block-diagonalizes over
    // DFT modes with effective momenta lambda_m, so its spectrum must be
    // the union over m of the 1D spectra at q = lambda_m.
    const double a = 1.0, k = 1.0;
    const int nx = 41, ny = 12;
    const double dx = 0.25, dy = 0.7;
    const double x_lo = -0.5 * (nx - 1) * dx;

    std::vector<double> a_y(nx), v(nx);
    const double c_amp = 0.5 * k * k * (1.0 + 1.0 / (4.0 * a * a * k * k)) / 4.0;
    const double omega_ext = compensating_trap_frequency(a, k);
    for (int i = 0; i < nx; ++i) {
        const double x = x_lo + i * dx;
        const double u = x / a;
        const double s2 = u >= 0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u));
        a_y[i] = -k * s2;
        const double sech = 1.0 / std::cosh(0.5 * u);
        v[i] = c_amp * sech * sech + 0.5 * omega_ext * omega_ext * x * x;
    }

    using cd = std::complex<double>;
    const int dim = nx * ny;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    auto at = [&](int i, int j) { return i * ny + j; };

    // x kinetic (Dirichlet, FD2) and diagonal V
    const double tx = 0.5 / (dx * dx);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            h(at(i, j), at(i, j)) += 2.0 * tx + v[i];
            if (i + 1 < nx) {
                h(at(i, j), at(i + 1, j)) += -tx;
                h(at(i + 1, j), at(i, j)) += -tx;
            }
        }

    // (p_y - A_y(x))^2 / 2 with periodic FD4 D_y: expand as
    // -D^2/2 + A^2/2 + i/2 (D A + A D) since p_y = -i d/dy.
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(ny, ny);
    for (int j = 0; j < ny; ++j) {
        auto wrap = [&](int m) { return (m % ny + ny) % ny; };
        d(j, wrap(j - 2)) += 1.0 / (12 * dy);
        d(j, wrap(j - 1)) += -8.0 / (12 * dy);
        d(j, wrap(j + 1)) += 8.0 / (12 * dy);
        d(j, wrap(j + 2)) += -1.0 / (12 * dy);
    }
    const Eigen::MatrixXd d2 = d * d;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int j2 = 0; j2 < ny; ++j2) {
                cd val = -0.5 * d2(j, j2);
                val += cd(0.0, 0.5 * (d(j, j2) * a_y[i] + a_y[i] * d(j, j2)));
                if (j == j2) val += 0.5 * a_y[i] * a_y[i];
                h(at(i, j), at(i, j2)) += val;
            }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    REQUIRE(es.info() == Eigen::Success);

    // union of 1D spectra at the FD4 effective momenta
    Landau1DSetup s;
    s.dx = dx;
    s.x.resize(nx);
    s.A_y = a_y;
    s.V = v;
    for (int i = 0; i < nx; ++i) s.x[i] = x_lo + i * dx;
    std::vector<double> expected;
    for (int m = 0; m < ny; ++m) {
        const double theta = 2.0 * std::numbers::pi * m / ny;
        const double lambda = (8.0 * std::sin(theta) - std::sin(2.0 * theta)) / (6.0 * dy);
        const auto w = lowest_eigenvalues(reduced_1d_hamiltonian(s, lambda), 4);
        expected.insert(expected.end(), w.begin(), w.end());
    }
    std::sort(expected.begin(), expected.end());

    for (int n = 0; n < 8; ++n)
        CHECK(es.eigenvalues()[n] == Catch::Approx(expected[n]).margin(1e-9));
}

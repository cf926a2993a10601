#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gaugesim/grid.hpp"
#include "gaugesim/stencil.hpp"
#include "gaugesim/units.hpp"

using namespace gaugesim;

namespace {

ScalarField2D sampled(const Grid2D& g, double (*fn)(double, double)) {
    ScalarField2D f(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) f.at(i, j) = fn(g.x(i), g.y(j));
    return f;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("make_grid spacing examples") {
    const Grid2D g1 = make_grid(-100, 100, 0, 10, 201, 11);
    CHECK(g1.dx == 1.0);
    CHECK(g1.dy == 1.0);

    const Grid2D g2 = make_grid(0, 1, 0, 1, 8, 8);
    CHECK(g2.dx == Catch::Approx(1.0 / 7.0).margin(0));
    CHECK(g2.dy == Catch::Approx(1.0 / 7.0).margin(0));
}

TEST_CASE("make_grid rejects degenerate input") {
    CHECK_THROWS_WITH(make_grid(0, 1, 0, 1, 4, 8), Catch::Matchers::ContainsSubstring("nx below minimum"));
    CHECK_THROWS_WITH(make_grid(0, 1, 0, 1, 8, 4), Catch::Matchers::ContainsSubstring("ny below minimum"));
    CHECK_THROWS_WITH(make_grid(1, 1, 0, 1, 8, 8), Catch::Matchers::ContainsSubstring("x extent"));
    CHECK_THROWS_WITH(make_grid(0, 1, 2, 1, 8, 8), Catch::Matchers::ContainsSubstring("y extent"));
}

TEST_CASE("grid coordinates are exact linear samples") {
    const Grid2D g = make_grid(-3.5, 7.25, 0.1, 0.9, 32, 16);
    for (int i = 0; i < g.nx; ++i) CHECK(g.x(i) == g.x_min + i * g.dx);
    CHECK(g.x(g.nx - 1) == Catch::Approx(g.x_max).epsilon(1e-15));
}

TEST_CASE("gradient of linear field is exact") {
    const Grid2D g = make_grid(-100, 100, 0, 10, 51, 11);
    const ScalarField2D f = sampled(g, [](double x, double) { return x; });
    const VectorField2D grad = gradient(f);
    for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(std::abs(grad.x[n] - 1.0) < 1e-12);
        CHECK(std::abs(grad.y[n]) < 1e-12);
    }
}

TEST_CASE("gradient of constant field is exactly zero") {
    const Grid2D g = make_grid(0, 1, 0, 1, 9, 9);
    const ScalarField2D f = sampled(g, [](double, double) { return 0.3 + 3.1415926; });
    const VectorField2D grad = gradient(f);
    CHECK(max_abs(grad.x) == 0.0);
    CHECK(max_abs(grad.y) == 0.0);
}

TEST_CASE("gradient of sin(x) matches cos(x) at 4th order on dx=0.1") {
    const Grid2D g = make_grid(0, 6.3, 0, 0.7, 64, 8);
    REQUIRE(g.dx == Catch::Approx(0.1).epsilon(1e-12));
    const ScalarField2D f = sampled(g, [](double x, double) { return std::sin(x); });
    const ScalarField2D dfdx = partial_x(f);
    double err = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            err = std::max(err, std::abs(dfdx.at(i, j) - std::cos(g.x(i))));
    CHECK(err < 1e-6);
}

TEST_CASE("differential operators are linear") {
    const Grid2D g = make_grid(0, 3, 0, 2, 24, 16);
    const ScalarField2D f = sampled(g, [](double x, double y) { return std::sin(x) * y; });
    const ScalarField2D h = sampled(g, [](double x, double y) { return std::cos(y) + x * x; });
    const double alpha = 1.7, beta = -0.4;

    ScalarField2D combo(g);
    for (std::size_t n = 0; n < g.size(); ++n)
        combo.values[n] = alpha * f.values[n] + beta * h.values[n];

    const VectorField2D gf = gradient(f);
    const VectorField2D gh = gradient(h);
    const VectorField2D gc = gradient(combo);
    double err = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        err = std::max(err, std::abs(gc.x[n] - alpha * gf.x[n] - beta * gh.x[n]));
        err = std::max(err, std::abs(gc.y[n] - alpha * gf.y[n] - beta * gh.y[n]));
    }
    CHECK(err < 1e-12);
}

TEST_CASE("curl of simple shear and rotation fields") {
    const Grid2D g = make_grid(-2, 2, -2, 2, 33, 33);

    VectorField2D shear(g); // A = (0, x) -> curl_z = 1
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) shear.y[g.idx(i, j)] = g.x(i);
    const ScalarField2D c1 = curl_z(shear);
    for (double v : c1.values) CHECK(std::abs(v - 1.0) < 1e-12);

    VectorField2D rot(g); // A = (-y/2, x/2) -> curl_z = 1
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            rot.x[g.idx(i, j)] = -0.5 * g.y(j);
            rot.y[g.idx(i, j)] = 0.5 * g.x(i);
        }
    const ScalarField2D c2 = curl_z(rot);
    for (double v : c2.values) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("curl of a gradient field vanishes at the stencil order") {
    // g = sin(x) cos(y); curl(grad g) = 0 up to truncation, and halving dx
    // shrinks the residual at ~4th order.
    auto residual = [](int n) {
        const Grid2D g = make_grid(0, 3.1, 0, 3.1, n, n);
        const ScalarField2D f =
            sampled(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
        const ScalarField2D c = curl_z(gradient(f));
        return max_abs(c.values);
    };
    const double r1 = residual(33);
    const double r2 = residual(65);
    CHECK(r1 < 1e-4);
    const double order = std::log2(r1 / r2);
    CHECK(order > 3.2);
    CHECK(order < 7.0);
}

TEST_CASE("unit system SI round trip") {
    UnitSystem u;
    u.length_si = 1e-7;
    u.time_si = 3.2e-6;
    REQUIRE(u.has_si());
    const double x = 12.345;
    CHECK(std::abs(u.from_si_length(u.to_si_length(x)) - x) < 1e-12 * x);
    CHECK(std::abs(u.from_si_velocity(u.to_si_velocity(x)) - x) < 1e-12 * x);
    CHECK(std::abs(u.from_si_frequency(u.to_si_frequency(x)) - x) < 1e-12 * x);
    CHECK(recoil_frequency(1.0) == 0.5);
    CHECK(recoil_frequency(2.0) == 2.0);
}

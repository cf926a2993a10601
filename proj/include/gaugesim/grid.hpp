#pragma once

// Rectangular xy grid and the scalar/vector fields sampled on it.
// Storage is row-major with x as the slow index: value(i,j) = values[i*ny + j].
// The binary file format (field_io.hpp) depends on this layout.

#include <cstddef>
#include <string>
#include <vector>

#include "gaugesim/errors.hpp"

namespace gaugesim {

struct Grid2D {
    int nx = 0;
    int ny = 0;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double dx = 0.0, dy = 0.0;

    // x_i = x_min + i*dx exactly (single multiply-add per index).
    double x(int i) const { return x_min + i * dx; }
    double y(int j) const { return y_min + j * dy; }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }

    bool contains(double px, double py) const {
        return px >= x_min && px <= x_max && py >= y_min && py <= y_max;
    }

    friend bool operator==(const Grid2D& a, const Grid2D& b) {
        return a.nx == b.nx && a.ny == b.ny && a.x_min == b.x_min && a.x_max == b.x_max &&
               a.y_min == b.y_min && a.y_max == b.y_max;
    }
};

inline Grid2D make_grid(double x_min, double x_max, double y_min, double y_max, int nx, int ny) {
    if (nx < 8) throw ConfigError("nx below minimum (need nx >= 8, got " + std::to_string(nx) + ")");
    if (ny < 8) throw ConfigError("ny below minimum (need ny >= 8, got " + std::to_string(ny) + ")");
    if (!(x_max > x_min)) throw ConfigError("degenerate x extent (x_max must exceed x_min)");
    if (!(y_max > y_min)) throw ConfigError("degenerate y extent (y_max must exceed y_min)");
    Grid2D g;
    g.nx = nx;
    g.ny = ny;
    g.x_min = x_min;
    g.x_max = x_max;
    g.y_min = y_min;
    g.y_max = y_max;
    g.dx = (x_max - x_min) / (nx - 1);
    g.dy = (y_max - y_min) / (ny - 1);
    return g;
}

struct ScalarField2D {
    Grid2D grid;
    std::vector<double> values;

    ScalarField2D() = default;
    explicit ScalarField2D(const Grid2D& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

    double& at(int i, int j) { return values[grid.idx(i, j)]; }
    double at(int i, int j) const { return values[grid.idx(i, j)]; }
    double& operator()(int i, int j) { return at(i, j); }
    double operator()(int i, int j) const { return at(i, j); }
};

// Two real components on a shared grid; total payload 2*nx*ny values.
struct VectorField2D {
    Grid2D grid;
    std::vector<double> x; // x-component, same layout as ScalarField2D
    std::vector<double> y;

    VectorField2D() = default;
    explicit VectorField2D(const Grid2D& g) : grid(g), x(g.size(), 0.0), y(g.size(), 0.0) {}

    ScalarField2D component_x() const {
        ScalarField2D f(grid);
        f.values = x;
        return f;
    }
    ScalarField2D component_y() const {
        ScalarField2D f(grid);
        f.values = y;
        return f;
    }
};

} // namespace gaugesim

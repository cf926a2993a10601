#pragma once

// Grid field serialization.
//
// csv: header "# nx ny x_min x_max y_min y_max", then one row per x-index
//      of comma-separated values (y fast), printed with 17 significant
//      digits (round-trips doubles through decimal).
// bin: magic "GFLD1", then little-endian u32 nx, u32 ny, f64 x_min, x_max,
//      y_min, y_max, then nx*ny f64 values, x slow / y fast. Bit-exact
//      round-trip.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gaugesim/errors.hpp"
#include "gaugesim/grid.hpp"

namespace gaugesim {

enum class FieldFormat { csv, bin };

inline FieldFormat field_format_from_string(const std::string& s) {
    if (s == "csv") return FieldFormat::csv;
    if (s == "bin") return FieldFormat::bin;
    throw ConfigError("unknown field format '" + s + "' (expected csv or bin)");
}

namespace detail {

inline void put_u32_le(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_f64_le(std::ostream& os, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint32_t get_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline double get_f64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline void write_field(const ScalarField2D& f, const std::string& path, FieldFormat format) {
    const Grid2D& g = f.grid;
    if (format == FieldFormat::csv) {
        std::ofstream os(path);
        if (!os) throw ConfigError("cannot open '" + path + "' for writing");
        os << "# " << g.nx << ' ' << g.ny << ' ' << detail::fmt17(g.x_min) << ' '
           << detail::fmt17(g.x_max) << ' ' << detail::fmt17(g.y_min) << ' '
           << detail::fmt17(g.y_max) << '\n';
        for (int i = 0; i < g.nx; ++i) {
            for (int j = 0; j < g.ny; ++j) {
                if (j) os << ',';
                os << detail::fmt17(f.at(i, j));
            }
            os << '\n';
        }
        if (!os) throw ConfigError("write failed for '" + path + "'");
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open '" + path + "' for writing");
    os.write("GFLD1", 5);
    detail::put_u32_le(os, static_cast<std::uint32_t>(g.nx));
    detail::put_u32_le(os, static_cast<std::uint32_t>(g.ny));
    detail::put_f64_le(os, g.x_min);
    detail::put_f64_le(os, g.x_max);
    detail::put_f64_le(os, g.y_min);
    detail::put_f64_le(os, g.y_max);
    for (double v : f.values) detail::put_f64_le(os, v);
    if (!os) throw ConfigError("write failed for '" + path + "'");
}

inline ScalarField2D read_field(const std::string& path, FieldFormat format) {
    if (format == FieldFormat::bin) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw ConfigError("cannot open '" + path + "'");
        char magic[5];
        is.read(magic, 5);
        if (!is || std::memcmp(magic, "GFLD1", 5) != 0)
            throw ConfigError("'" + path + "' is not a GFLD1 field file");
        const int nx = static_cast<int>(detail::get_u32_le(is));
        const int ny = static_cast<int>(detail::get_u32_le(is));
        const double x_min = detail::get_f64_le(is);
        const double x_max = detail::get_f64_le(is);
        const double y_min = detail::get_f64_le(is);
        const double y_max = detail::get_f64_le(is);
        ScalarField2D f(make_grid(x_min, x_max, y_min, y_max, nx, ny));
        for (auto& v : f.values) v = detail::get_f64_le(is);
        if (!is) throw ConfigError("'" + path + "' truncated");
        return f;
    }
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open '" + path + "'");
    std::string header;
    std::getline(is, header);
    int nx, ny;
    double x_min, x_max, y_min, y_max;
    {
        std::istringstream hs(header);
        char hash;
        if (!(hs >> hash >> nx >> ny >> x_min >> x_max >> y_min >> y_max) || hash != '#')
            throw ConfigError("'" + path + "' has a malformed csv header");
    }
    ScalarField2D f(make_grid(x_min, x_max, y_min, y_max, nx, ny));
    std::string line;
    for (int i = 0; i < nx; ++i) {
        if (!std::getline(is, line)) throw ConfigError("'" + path + "' truncated at row " +
                                                       std::to_string(i));
        std::istringstream ls(line);
        std::string cell;
        for (int j = 0; j < ny; ++j) {
            if (!std::getline(ls, cell, ','))
                throw ConfigError("'" + path + "' row " + std::to_string(i) + " truncated");
            f.at(i, j) = std::stod(cell);
        }
    }
    return f;
}

} // namespace gaugesim

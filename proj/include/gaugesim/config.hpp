#pragma once

// Run configuration: a strict line-oriented `key = value` format with
// `[section]` headers and `#` comments. Unknown sections or keys are
// rejected, and every validation error names the key and line. An empty
// file yields the canonical defaults (sigma0 = 10, delta_x = 1,
// k_p = k_c = 0.5, so a = 25 and k = 1; grid x0 +- 6a; compensated trap).

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "gaugesim/adiabaticity.hpp"
#include "gaugesim/beams.hpp"
#include "gaugesim/dynamics.hpp"
#include "gaugesim/errors.hpp"
#include "gaugesim/field_io.hpp"
#include "gaugesim/grid.hpp"
#include "gaugesim/spectrum.hpp"

namespace gaugesim {

struct RunConfig {
    // [beams]
    double omega0_probe = 1.0, omega0_control = 1.0;
    double sigma0_probe = 10.0, sigma0_control = 10.0;
    double x0 = 0.0, delta_x = 1.0;
    double k_p = 0.5, k_c = 0.5;
    bool paraxial = false;
    bool width_printed = false; // as-printed width law, comparison only

    // [grid]
    int nx = 1201, ny = 33;
    std::optional<double> x_min, x_max, y_min, y_max;

    // [trap]
    TrapKind trap = TrapKind::compensated;
    double trap_omega = 0.0;

    // [motion]
    MotionSpec motion;

    // [evolution]
    EvolutionConfig evolution;

    // [outputs]
    std::string out_dir = "out";
    FieldFormat format = FieldFormat::csv;

    // [units]
    bool si_mode = false;
    double k_si = 1e7;
    double tau3_si = 1e-7;
    double omega_lo_si = 1e7, omega_hi_si = 1e8;
    std::optional<double> length_si, time_si;

    BeamPairConfig beam_pair() const {
        BeamPairConfig b;
        b.probe.omega0 = omega0_probe;
        b.probe.sigma0 = sigma0_probe;
        b.probe.center_x = x0 + 0.5 * delta_x;
        b.probe.k = k_p;
        b.probe.propagation_sign = +1;
        b.control.omega0 = omega0_control;
        b.control.sigma0 = sigma0_control;
        b.control.center_x = x0 - 0.5 * delta_x;
        b.control.k = k_c;
        b.control.propagation_sign = -1;
        b.width_law = !paraxial ? WidthLaw::frozen
                                : (width_printed ? WidthLaw::paraxial_printed : WidthLaw::paraxial);
        b.validate();
        return b;
    }

    // Default span: x0 +- 6a (or +- 6 sigma0 when delta_x = 0), y in
    // [0, 2 pi / k].
    Grid2D grid() const {
        const double a_abs = delta_x != 0.0
                                 ? std::abs(sigma0_probe * sigma0_probe / (4.0 * delta_x))
                                 : 0.0;
        const double half = delta_x != 0.0 ? 6.0 * a_abs : 6.0 * sigma0_probe;
        const double xl = x_min ? *x_min : x0 - half;
        const double xh = x_max ? *x_max : x0 + half;
        const double yl = y_min ? *y_min : 0.0;
        const double yh = y_max ? *y_max : 2.0 * std::numbers::pi / (k_p + k_c);
        return make_grid(xl, xh, yl, yh, nx, ny);
    }

    SiAdiabaticity si_adiabaticity() const {
        SiAdiabaticity si;
        si.k_si = k_si;
        si.v_si = std::hypot(motion.vx, motion.vy) != 0.0 ? std::hypot(motion.vx, motion.vy)
                                                          : motion.v0;
        si.dv_si = motion.dv;
        si.omega_lo = omega_lo_si;
        si.omega_hi = omega_hi_si;
        si.tau3_si = tau3_si;
        return si;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& val, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(val, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != val.size())
        throw ConfigError(key + " expects a number, got '" + val + "' (line " +
                          std::to_string(line) + ")");
    return v;
}

inline int parse_int(const std::string& key, const std::string& val, int line) {
    const double v = parse_double(key, val, line);
    if (v != std::floor(v))
        throw ConfigError(key + " expects an integer (line " + std::to_string(line) + ")");
    return static_cast<int>(v);
}

inline bool parse_bool(const std::string& key, const std::string& val, int line) {
    if (val == "true") return true;
    if (val == "false") return false;
    throw ConfigError(key + " expects true or false (line " + std::to_string(line) + ")");
}

using KeyHandler = std::function<void(RunConfig&, const std::string&, int)>;

inline const std::map<std::string, KeyHandler>& config_schema() {
    auto positive = [](const char* key, double RunConfig::* field) {
        return KeyHandler([key, field](RunConfig& c, const std::string& v, int line) {
            const double d = parse_double(key, v, line);
            if (!(d > 0))
                throw ConfigError(std::string(key) + " must be positive (line " +
                                  std::to_string(line) + ")");
            c.*field = d;
        });
    };
    auto any = [](const char* key, double RunConfig::* field) {
        return KeyHandler([key, field](RunConfig& c, const std::string& v, int line) {
            c.*field = parse_double(key, v, line);
        });
    };
    auto flag = [](const char* key, bool RunConfig::* field) {
        return KeyHandler([key, field](RunConfig& c, const std::string& v, int line) {
            c.*field = parse_bool(key, v, line);
        });
    };
    auto opt = [](const char* key, std::optional<double> RunConfig::* field) {
        return KeyHandler([key, field](RunConfig& c, const std::string& v, int line) {
            c.*field = parse_double(key, v, line);
        });
    };

    static const std::map<std::string, KeyHandler> schema = {
        // beams; shared keys set both, per-beam keys override one
        {"beams.omega0",
         [](RunConfig& c, const std::string& v, int line) {
             const double d = parse_double("omega0", v, line);
             if (!(d > 0))
                 throw ConfigError("omega0 must be positive (line " + std::to_string(line) + ")");
             c.omega0_probe = c.omega0_control = d;
         }},
        {"beams.omega0_probe", positive("omega0_probe", &RunConfig::omega0_probe)},
        {"beams.omega0_control", positive("omega0_control", &RunConfig::omega0_control)},
        {"beams.sigma0",
         [](RunConfig& c, const std::string& v, int line) {
             const double d = parse_double("sigma0", v, line);
             if (!(d > 0))
                 throw ConfigError("sigma0 must be positive (line " + std::to_string(line) + ")");
             c.sigma0_probe = c.sigma0_control = d;
         }},
        {"beams.sigma0_probe", positive("sigma0_probe", &RunConfig::sigma0_probe)},
        {"beams.sigma0_control", positive("sigma0_control", &RunConfig::sigma0_control)},
        {"beams.x0", any("x0", &RunConfig::x0)},
        {"beams.delta_x", any("delta_x", &RunConfig::delta_x)},
        {"beams.k_p", positive("k_p", &RunConfig::k_p)},
        {"beams.k_c", positive("k_c", &RunConfig::k_c)},
        {"beams.paraxial", flag("paraxial", &RunConfig::paraxial)},
        {"beams.width_law",
         [](RunConfig& c, const std::string& v, int line) {
             if (v == "standard")
                 c.width_printed = false;
             else if (v == "printed")
                 c.width_printed = true;
             else
                 throw ConfigError("width_law expects standard or printed (line " +
                                   std::to_string(line) + ")");
         }},
        // grid
        {"grid.nx",
         [](RunConfig& c, const std::string& v, int line) {
             const int n = parse_int("nx", v, line);
             if (n < 8)
                 throw ConfigError("nx below minimum (need >= 8, line " + std::to_string(line) +
                                   ")");
             c.nx = n;
         }},
        {"grid.ny",
         [](RunConfig& c, const std::string& v, int line) {
             const int n = parse_int("ny", v, line);
             if (n < 8)
                 throw ConfigError("ny below minimum (need >= 8, line " + std::to_string(line) +
                                   ")");
             c.ny = n;
         }},
        {"grid.x_min", opt("x_min", &RunConfig::x_min)},
        {"grid.x_max", opt("x_max", &RunConfig::x_max)},
        {"grid.y_min", opt("y_min", &RunConfig::y_min)},
        {"grid.y_max", opt("y_max", &RunConfig::y_max)},
        // trap
        {"trap.mode",
         [](RunConfig& c, const std::string& v, int line) {
             if (v == "none")
                 c.trap = TrapKind::none;
             else if (v == "compensated")
                 c.trap = TrapKind::compensated;
             else if (v == "custom")
                 c.trap = TrapKind::custom;
             else
                 throw ConfigError("trap mode expects none, compensated or custom (line " +
                                   std::to_string(line) + ")");
         }},
        {"trap.omega",
         [](RunConfig& c, const std::string& v, int line) {
             const double d = parse_double("omega", v, line);
             if (d < 0)
                 throw ConfigError("omega must be non-negative (line " + std::to_string(line) +
                                   ")");
             c.trap_omega = d;
         }},
        // motion
        {"motion.vx",
         [](RunConfig& c, const std::string& v, int line) {
             c.motion.vx = parse_double("vx", v, line);
         }},
        {"motion.vy",
         [](RunConfig& c, const std::string& v, int line) {
             c.motion.vy = parse_double("vy", v, line);
         }},
        {"motion.v0",
         [](RunConfig& c, const std::string& v, int line) {
             c.motion.v0 = parse_double("v0", v, line);
         }},
        {"motion.dv",
         [](RunConfig& c, const std::string& v, int line) {
             const double d = parse_double("dv", v, line);
             if (d < 0)
                 throw ConfigError("dv must be non-negative (line " + std::to_string(line) + ")");
             c.motion.dv = d;
         }},
        // evolution
        {"evolution.dt",
         [](RunConfig& c, const std::string& v, int line) {
             const double d = parse_double("dt", v, line);
             if (!(d > 0))
                 throw ConfigError("dt must be positive (line " + std::to_string(line) + ")");
             c.evolution.dt = d;
         }},
        {"evolution.n_steps",
         [](RunConfig& c, const std::string& v, int line) {
             const int n = parse_int("n_steps", v, line);
             if (n < 1)
                 throw ConfigError("n_steps must be >= 1 (line " + std::to_string(line) + ")");
             c.evolution.n_steps = n;
         }},
        {"evolution.force_x",
         [](RunConfig& c, const std::string& v, int line) {
             c.evolution.force_x = parse_double("force_x", v, line);
         }},
        {"evolution.force_y",
         [](RunConfig& c, const std::string& v, int line) {
             c.evolution.force_y = parse_double("force_y", v, line);
         }},
        {"evolution.sample_every",
         [](RunConfig& c, const std::string& v, int line) {
             const int n = parse_int("sample_every", v, line);
             if (n < 1)
                 throw ConfigError("sample_every must be >= 1 (line " + std::to_string(line) +
                                   ")");
             c.evolution.sample_every = n;
         }},
        {"evolution.boundary",
         [](RunConfig& c, const std::string& v, int line) {
             if (v == "box")
                 c.evolution.absorbing = false;
             else if (v == "absorb")
                 c.evolution.absorbing = true;
             else
                 throw ConfigError("boundary expects box or absorb (line " +
                                   std::to_string(line) + ")");
         }},
        {"evolution.absorb_width",
         [](RunConfig& c, const std::string& v, int line) {
             const double d = parse_double("absorb_width", v, line);
             if (d < 0)
                 throw ConfigError("absorb_width must be non-negative (line " +
                                   std::to_string(line) + ")");
             c.evolution.absorb_width = d;
         }},
        {"evolution.track_energy",
         [](RunConfig& c, const std::string& v, int line) {
             c.evolution.track_energy = parse_bool("track_energy", v, line);
         }},
        // outputs
        {"outputs.directory",
         [](RunConfig& c, const std::string& v, int) { c.out_dir = v; }},
        {"outputs.format",
         [](RunConfig& c, const std::string& v, int line) {
             try {
                 c.format = field_format_from_string(v);
             } catch (const ConfigError&) {
                 throw ConfigError("format expects csv or bin (line " + std::to_string(line) +
                                   ")");
             }
         }},
        // units
        {"units.mode",
         [](RunConfig& c, const std::string& v, int line) {
             if (v == "internal")
                 c.si_mode = false;
             else if (v == "si")
                 c.si_mode = true;
             else
                 throw ConfigError("units mode expects internal or si (line " +
                                   std::to_string(line) + ")");
         }},
        {"units.k_si", positive("k_si", &RunConfig::k_si)},
        {"units.tau3_si", positive("tau3_si", &RunConfig::tau3_si)},
        {"units.omega_lo_si", positive("omega_lo_si", &RunConfig::omega_lo_si)},
        {"units.omega_hi_si", positive("omega_hi_si", &RunConfig::omega_hi_si)},
        {"units.length_si", opt("length_si", &RunConfig::length_si)},
        {"units.time_si", opt("time_si", &RunConfig::time_si)},
    };
    return schema;
}

inline const char* known_sections[] = {"beams", "grid",    "trap",  "motion",
                                       "evolution", "outputs", "units"};

} // namespace detail

// Applies one `section.key = value` assignment (used by the sweep
// subcommand); line 0 marks a command-line override in error messages.
inline void apply_config_override(RunConfig& cfg, const std::string& dotted_key,
                                  const std::string& value, int line = 0) {
    const auto& schema = detail::config_schema();
    const auto it = schema.find(dotted_key);
    if (it == schema.end()) throw ConfigError("unknown key '" + dotted_key + "'");
    it->second(cfg, detail::trim(value), line);
}

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    const auto& schema = detail::config_schema();
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = detail::trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("malformed section header (line " + std::to_string(line) + ")");
            section = detail::trim(s.substr(1, s.size() - 2));
            bool known = false;
            for (const char* name : detail::known_sections)
                if (section == name) known = true;
            if (!known)
                throw ConfigError("unknown section '" + section + "' (line " +
                                  std::to_string(line) + ")");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' (line " + std::to_string(line) + ")");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key (line " + std::to_string(line) + ")");
        if (value.empty())
            throw ConfigError("empty value for '" + key + "' (line " + std::to_string(line) +
                              ")");
        if (section.empty())
            throw ConfigError("key '" + key + "' outside any [section] (line " +
                              std::to_string(line) + ")");
        const auto it = schema.find(section + "." + key);
        if (it == schema.end())
            throw ConfigError("unknown key '" + key + "' in [" + section + "] (line " +
                              std::to_string(line) + ")");
        it->second(cfg, value, line);
    }
    // cross-field checks surface here with key names
    cfg.beam_pair();
    cfg.grid();
    return cfg;
}

inline RunConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace gaugesim

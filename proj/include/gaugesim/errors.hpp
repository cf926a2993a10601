#pragma once

#include <stdexcept>
#include <string>

namespace gaugesim {

// Invalid or inconsistent user-supplied configuration (bad grid extents,
// negative waists, unknown config keys, ...). The message names the
// offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested closed form does not exist for the given configuration
// (e.g. analytic field profile with unequal beam waists).
class UnsupportedConfigError : public std::runtime_error {
public:
    explicit UnsupportedConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Division by a vanishing control amplitude in a sampled-profile ratio.
class SingularRatioError : public std::runtime_error {
public:
    explicit SingularRatioError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure inside a solver (eigensolver breakdown, NaN during
// propagation); carries diagnostic context.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gaugesim

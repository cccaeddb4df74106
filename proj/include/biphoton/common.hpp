#pragma once

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace biphoton {

using Complex = std::complex<double>;

/// Raised when a scenario or input file cannot be parsed into valid module types.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a quadrature or solver result fails its accuracy requirement.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised by the engineering pipeline when a target state admits no solution.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

/// Formats a double with 12 significant digits. All report and table output
/// goes through this so that identical inputs produce byte-identical files.
inline std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Full-precision formatting, used where a value must survive a round trip.
inline std::string fmt_g17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

/// sin(x)/x with the removable singularity filled in.
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace biphoton

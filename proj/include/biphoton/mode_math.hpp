#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "biphoton/common.hpp"

namespace biphoton {

/// Laguerre-Gaussian mode label: radial index p >= 0, OAM index ell, waist in meters.
struct LGIndex {
    int p = 0;
    int ell = 0;
    double waist = 0.0;

    void validate() const {
        if (p < 0) throw std::invalid_argument("LGIndex: radial index p must be >= 0");
        if (!(waist > 0.0)) throw std::invalid_argument("LGIndex: waist must be > 0");
    }
};

/// Pump beam as a superposition of p = 0 LG modes sharing one waist.
/// terms maps the pump OAM index to its complex coefficient.
struct PumpSpec {
    std::map<int, Complex> terms;
    double waist = 0.0;

    static PumpSpec gaussian(double waist) { return PumpSpec{{{0, Complex(1.0, 0.0)}}, waist}; }

    void validate() const {
        if (!(waist > 0.0)) throw std::invalid_argument("PumpSpec: waist must be > 0");
        bool any = false;
        for (const auto& [ell, a] : terms)
            if (std::abs(a) > 0.0) any = true;
        if (!any) throw std::invalid_argument("PumpSpec: needs at least one nonzero coefficient");
    }
};

/// Generalized Laguerre polynomial L_p^alpha(x) by the upward three-term recurrence.
inline double laguerre(int p, double alpha, double x) {
    if (p < 0) throw std::invalid_argument("laguerre: p must be >= 0");
    if (p == 0) return 1.0;
    double lkm1 = 1.0;
    double lk = 1.0 + alpha - x;
    for (int k = 1; k < p; ++k) {
        double lkp1 = ((2 * k + 1 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// i^ell as an exact quarter-turn phase (ell may be negative).
inline Complex quarter_turn(int ell) {
    switch (((ell % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Radial profile of the momentum-space LG mode, i.e. everything except the
/// e^{i ell Arg(q)} winding and the i^ell phase convention factor.
inline double lg_radial_momentum(int p, int ell, double w, double rho) {
    const int al = std::abs(ell);
    const double norm = std::sqrt(w * w * factorial(p) / (2.0 * M_PI * factorial(p + al)));
    const double u = rho * rho * w * w / 2.0;
    double pow_term = 1.0;
    const double base = rho * w / std::sqrt(2.0);
    for (int k = 0; k < al; ++k) pow_term *= base;
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return norm * sign * pow_term * std::exp(-u / 2.0) * laguerre(p, al, u);
}

/// Radial profile of the position-space LG mode at the waist plane z = 0.
inline double lg_radial_position(int p, int ell, double w, double r) {
    const int al = std::abs(ell);
    const double norm = std::sqrt(2.0 * factorial(p) / (M_PI * factorial(p + al))) / w;
    const double u = 2.0 * r * r / (w * w);
    double pow_term = 1.0;
    const double base = std::sqrt(2.0) * r / w;
    for (int k = 0; k < al; ++k) pow_term *= base;
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return norm * sign * pow_term * std::exp(-u / 2.0) * laguerre(p, al, u);
}

} // namespace detail

/// Momentum-space LG amplitude at z = 0. The (-1)^{p + ell/2} convention
/// factor is realized as (-1)^p i^ell so that odd ell is well defined; this
/// is a global phase per mode and drops out of all probabilities.
inline Complex lg_angular_spectrum(const LGIndex& idx, double qx, double qy) {
    idx.validate();
    const double rho = std::hypot(qx, qy);
    if (rho == 0.0 && idx.ell != 0) return {0.0, 0.0};
    const double radial = detail::lg_radial_momentum(idx.p, idx.ell, idx.waist, rho);
    Complex phase = detail::quarter_turn(idx.ell);
    if (idx.ell != 0) {
        const double arg = std::atan2(qy, qx);
        phase *= std::polar(1.0, idx.ell * arg);
    }
    return radial * phase;
}

/// Angular spectrum of the pump superposition.
inline Complex pump_angular_spectrum(const PumpSpec& pump, double qx, double qy) {
    pump.validate();
    Complex sum = 0.0;
    for (const auto& [ell, a] : pump.terms) {
        if (a == Complex(0.0, 0.0)) continue;
        sum += a * lg_angular_spectrum(LGIndex{0, ell, pump.waist}, qx, qy);
    }
    return sum;
}

/// Position-space LG field at the waist plane, same phase convention as the
/// angular spectrum.
inline Complex lg_position_field(const LGIndex& idx, double x, double y) {
    idx.validate();
    const double r = std::hypot(x, y);
    if (r == 0.0 && idx.ell != 0) return {0.0, 0.0};
    const double radial = detail::lg_radial_position(idx.p, idx.ell, idx.waist, r);
    Complex phase = detail::quarter_turn(idx.ell);
    if (idx.ell != 0) phase *= std::polar(1.0, idx.ell * std::atan2(y, x));
    return radial * phase;
}

/// Square sampling grid centred on the beam axis.
struct GridSpec {
    double extent = 0.0;  // full side length in meters
    int samples = 0;      // samples per side

    void validate() const {
        if (!(extent > 0.0)) throw std::invalid_argument("GridSpec: extent must be > 0");
        if (samples < 16) throw std::invalid_argument("GridSpec: needs at least 16 samples per side");
    }
    double coord(int i) const { return -extent / 2.0 + extent * (i + 0.5) / samples; }
};

struct PumpProfile {
    GridSpec grid;
    std::vector<Complex> field;      // row-major, index = iy * samples + ix
    std::vector<double> intensity;   // |field|^2
    std::vector<double> phase;       // Arg(field)

    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * grid.samples + ix;
    }
};

/// Evaluates the pump superposition on a position grid at the waist plane,
/// from the closed-form LG fields.
inline PumpProfile render_pump_profile(const PumpSpec& pump, const GridSpec& grid) {
    pump.validate();
    grid.validate();
    PumpProfile out;
    out.grid = grid;
    const int n = grid.samples;
    out.field.resize(static_cast<std::size_t>(n) * n);
    out.intensity.resize(out.field.size());
    out.phase.resize(out.field.size());
    for (int iy = 0; iy < n; ++iy) {
        const double y = grid.coord(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = grid.coord(ix);
            Complex f = 0.0;
            for (const auto& [ell, a] : pump.terms) {
                if (a == Complex(0.0, 0.0)) continue;
                f += a * lg_position_field(LGIndex{0, ell, pump.waist}, x, y);
            }
            const auto k = out.index(ix, iy);
            out.field[k] = f;
            out.intensity[k] = std::norm(f);
            out.phase[k] = std::arg(f);
        }
    }
    return out;
}

} // namespace biphoton

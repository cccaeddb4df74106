#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "biphoton/common.hpp"

namespace biphoton {

enum class SetupMode { idealized, experimental };

/// Physical scenario: wavelengths, in-crystal wavenumbers, waists, crystal length.
///
/// Idealized mode pins k_p = L / w_p^2 and w_s = w_i = sqrt(2) w_p, which makes
/// the Rayleigh lengths of pump and collection modes equal to the crystal
/// length. Experimental mode takes every value from the caller.
struct SetupParams {
    SetupMode mode = SetupMode::idealized;
    double lambda_p = 0.0;        // pump vacuum wavelength [m]
    double k_p = 0.0, k_s = 0.0, k_i = 0.0;  // wavenumbers inside the crystal [rad/m]
    double w_p = 0.0, w_s = 0.0, w_i = 0.0;  // pump / collection waists [m]
    double L = 0.0;               // crystal length [m]

    static SetupParams idealized(double lambda_p, double w_p, double L) {
        SetupParams s;
        s.mode = SetupMode::idealized;
        s.lambda_p = lambda_p;
        s.w_p = w_p;
        s.L = L;
        s.k_p = L / (w_p * w_p);
        s.k_s = s.k_i = s.k_p / 2.0;
        s.w_s = s.w_i = std::sqrt(2.0) * w_p;
        s.validate();
        return s;
    }

    static SetupParams experimental(double lambda_p, double k_p, double k_s, double k_i,
                                    double w_p, double w_s, double w_i, double L) {
        SetupParams s;
        s.mode = SetupMode::experimental;
        s.lambda_p = lambda_p;
        s.k_p = k_p;
        s.k_s = k_s;
        s.k_i = k_i;
        s.w_p = w_p;
        s.w_s = w_s;
        s.w_i = w_i;
        s.L = L;
        s.validate();
        return s;
    }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0)) throw std::invalid_argument(std::string("SetupParams: ") + name + " must be > 0");
        };
        positive(lambda_p, "lambda_p");
        positive(k_p, "k_p");
        positive(k_s, "k_s");
        positive(k_i, "k_i");
        positive(w_p, "w_p");
        positive(w_s, "w_s");
        positive(w_i, "w_i");
        positive(L, "L");
        if (mode == SetupMode::idealized) {
            if (std::abs(k_p - L / (w_p * w_p)) > 1e-9 * k_p)
                throw std::invalid_argument("SetupParams: idealized mode requires k_p = L / w_p^2");
            if (std::abs(w_s - std::sqrt(2.0) * w_p) > 1e-12 || std::abs(w_i - std::sqrt(2.0) * w_p) > 1e-12)
                throw std::invalid_argument("SetupParams: idealized mode requires w_s = w_i = sqrt(2) w_p");
            if (std::abs(k_s - k_p / 2.0) > 1e-9 * k_p || std::abs(k_i - k_p / 2.0) > 1e-9 * k_p)
                throw std::invalid_argument("SetupParams: idealized mode requires k_s = k_i = k_p / 2");
        }
    }

    bool degenerate() const {
        return std::abs(k_s - k_i) <= 1e-9 * k_p && std::abs(w_s - w_i) <= 1e-12;
    }
    double min_waist() const { return std::min(w_p, std::min(w_s, w_i)); }

    /// Characteristic magnitude of an un-normalized biphoton amplitude in this
    /// setup; used as the scale for convergence floors.
    double amplitude_scale() const {
        const double wm = min_waist();
        return w_p * w_s * w_i * L / (wm * wm * wm * wm);
    }
};

/// Crystal nonlinearity model. The quasi-phase-matching carrier is taken as
/// exactly compensating the collinear wavevector mismatch, so chi describes
/// the slow envelope and pmf() is evaluated at the residual transverse
/// mismatch only.
struct CrystalSpec {
    enum class Kind { periodic_sinc, cosine_series, discrete_poling };

    Kind kind = Kind::periodic_sinc;
    double L = 0.0;
    std::vector<double> c;     // cosine_series coefficients c_0..c_N
    double sigma = 0.0;        // cosine_series scale [m]
    std::vector<int> signs;    // discrete_poling domain orientations, +1/-1
    double domain_width = 0.0; // discrete_poling domain width [m]

    static CrystalSpec periodic(double L) {
        CrystalSpec s;
        s.kind = Kind::periodic_sinc;
        s.L = L;
        s.validate();
        return s;
    }

    /// sigma <= 0 selects the default L/4.
    static CrystalSpec cosine(std::vector<double> coeffs, double L, double sigma = -1.0) {
        CrystalSpec s;
        s.kind = Kind::cosine_series;
        s.L = L;
        s.c = std::move(coeffs);
        s.sigma = sigma > 0.0 ? sigma : L / 4.0;
        s.validate();
        return s;
    }

    static CrystalSpec poling(std::vector<int> signs, double domain_width) {
        CrystalSpec s;
        s.kind = Kind::discrete_poling;
        s.signs = std::move(signs);
        s.domain_width = domain_width;
        s.L = domain_width * static_cast<double>(s.signs.size());
        s.validate();
        return s;
    }

    void validate() const {
        if (!(L > 0.0)) throw std::invalid_argument("CrystalSpec: L must be > 0");
        switch (kind) {
            case Kind::periodic_sinc:
                break;
            case Kind::cosine_series:
                if (c.empty()) throw std::invalid_argument("CrystalSpec: cosine series needs coefficients");
                if (!(sigma > 0.0)) throw std::invalid_argument("CrystalSpec: sigma must be > 0");
                break;
            case Kind::discrete_poling: {
                if (signs.empty()) throw std::invalid_argument("CrystalSpec: poling pattern is empty");
                if (!(domain_width > 0.0))
                    throw std::invalid_argument("CrystalSpec: domain_width must be > 0");
                for (int s : signs)
                    if (s != 1 && s != -1)
                        throw std::invalid_argument("CrystalSpec: poling signs must be +1 or -1");
                const double total = domain_width * static_cast<double>(signs.size());
                if (std::abs(total - L) > 1e-9 * L)
                    throw std::invalid_argument("CrystalSpec: domain count times width must equal L");
                break;
            }
        }
    }
};

/// Longitudinal wavevector mismatch left after the quasi-phase-matching
/// carrier has absorbed the collinear part, measured with the pump term
/// opposite in sign to the signal and idler terms:
///
///   delta_kz = |q_s + q_i|^2 / (2 k_p) - |q_s|^2 / (2 k_s) - |q_i|^2 / (2 k_i)
///
/// This is the paraxial expansion of k_{s,z} + k_{i,z} - k_{p,z} with the
/// constant part removed.
inline double delta_kz(double qsx, double qsy, double qix, double qiy, const SetupParams& setup) {
    const double qpx = qsx + qix;
    const double qpy = qsy + qiy;
    const double qp2 = qpx * qpx + qpy * qpy;
    const double qs2 = qsx * qsx + qsy * qsy;
    const double qi2 = qix * qix + qiy * qiy;
    return qp2 / (2.0 * setup.k_p) - qs2 / (2.0 * setup.k_s) - qi2 / (2.0 * setup.k_i);
}

/// Effective nonlinearity envelope at position z inside the crystal.
inline double chi_profile(double z, const CrystalSpec& spec) {
    spec.validate();
    if (std::abs(z) > spec.L / 2.0 * (1.0 + 1e-12))
        throw std::invalid_argument("chi_profile: z outside the crystal");
    switch (spec.kind) {
        case CrystalSpec::Kind::periodic_sinc:
            return 1.0;
        case CrystalSpec::Kind::cosine_series: {
            double sum = 0.0;
            for (std::size_t n = 0; n < spec.c.size(); ++n)
                sum += spec.c[n] * std::cos(static_cast<double>(n) * z / spec.sigma);
            return sum;
        }
        case CrystalSpec::Kind::discrete_poling: {
            int j = static_cast<int>(std::floor((z + spec.L / 2.0) / spec.domain_width));
            if (j < 0) j = 0;
            if (j >= static_cast<int>(spec.signs.size())) j = static_cast<int>(spec.signs.size()) - 1;
            return static_cast<double>(spec.signs[static_cast<std::size_t>(j)]);
        }
    }
    return 0.0;
}

namespace detail {

/// Closed form of int_{-L/2}^{L/2} cos(a z) e^{i dk z} dz; real because the
/// interval is symmetric.
inline double cos_segment_integral(double a, double dk, double L) {
    const double x = dk * L / 2.0;
    const double y = a * L / 2.0;
    return (L / 2.0) * (sinc(x - y) + sinc(x + y));
}

/// Precomputed evaluator so amplitude quadratures avoid re-deriving series
/// constants at every node.
struct PmfEvaluator {
    CrystalSpec::Kind kind;
    double L = 0.0;
    // cosine series: half-length arguments a_n L/2 and coefficients
    std::vector<double> cn;
    std::vector<double> yn;  // a_n L / 2 = n L / (2 sigma)
    std::vector<double> cos_yn, sin_yn;
    // discrete poling
    std::vector<int> signs;
    double domain_width = 0.0;

    explicit PmfEvaluator(const CrystalSpec& spec) : kind(spec.kind), L(spec.L) {
        if (kind == CrystalSpec::Kind::cosine_series) {
            cn = spec.c;
            yn.resize(cn.size());
            cos_yn.resize(cn.size());
            sin_yn.resize(cn.size());
            for (std::size_t n = 0; n < cn.size(); ++n) {
                yn[n] = static_cast<double>(n) * L / (2.0 * spec.sigma);
                cos_yn[n] = std::cos(yn[n]);
                sin_yn[n] = std::sin(yn[n]);
            }
        } else if (kind == CrystalSpec::Kind::discrete_poling) {
            signs = spec.signs;
            domain_width = spec.domain_width;
        }
    }

    Complex operator()(double dk) const {
        const double x = dk * L / 2.0;
        switch (kind) {
            case CrystalSpec::Kind::periodic_sinc:
                return {L * sinc(x), 0.0};
            case CrystalSpec::Kind::cosine_series: {
                // sin(x -+ y_n) expanded through one sincos of x
                const double sx = std::sin(x);
                const double cx = std::cos(x);
                double sum = 0.0;
                for (std::size_t n = 0; n < cn.size(); ++n) {
                    const double d1 = x - yn[n];
                    const double d2 = x + yn[n];
                    const double t1 = std::abs(d1) < 1e-6 ? 1.0 - d1 * d1 / 6.0
                                                          : (sx * cos_yn[n] - cx * sin_yn[n]) / d1;
                    const double t2 = std::abs(d2) < 1e-6 ? 1.0 - d2 * d2 / 6.0
                                                          : (sx * cos_yn[n] + cx * sin_yn[n]) / d2;
                    sum += cn[n] * (t1 + t2);
                }
                return {0.5 * L * sum, 0.0};
            }
            case CrystalSpec::Kind::discrete_poling: {
                const std::size_t n = signs.size();
                if (std::abs(dk) < 1e-300) {
                    double sum = 0.0;
                    for (int s : signs) sum += s;
                    return {sum * domain_width, 0.0};
                }
                // sum of per-domain integrals of e^{i dk z}
                Complex total = 0.0;
                double z = -L / 2.0;
                Complex e_lo = std::polar(1.0, dk * z);
                for (std::size_t j = 0; j < n; ++j) {
                    const double z_hi = -L / 2.0 + domain_width * static_cast<double>(j + 1);
                    const Complex e_hi = std::polar(1.0, dk * z_hi);
                    total += static_cast<double>(signs[j]) * (e_hi - e_lo);
                    e_lo = e_hi;
                }
                return total / Complex(0.0, dk);
            }
        }
        return 0.0;
    }
};

} // namespace detail

/// Phase-matching function: the z-transform of the nonlinearity envelope
/// evaluated at mismatch dk, in closed form for every crystal variant.
inline Complex pmf(double dk, const CrystalSpec& spec) {
    spec.validate();
    return detail::PmfEvaluator(spec)(dk);
}

/// One row of the PMF export table; dk_half_l is the dimensionless dk L / 2.
struct PmfSample {
    double dk_half_l;
    Complex value;
};

inline std::vector<PmfSample> sample_pmf(const CrystalSpec& spec, double dk_half_l_min,
                                         double dk_half_l_max, int count) {
    if (count < 2) throw std::invalid_argument("sample_pmf: need at least 2 samples");
    spec.validate();
    detail::PmfEvaluator eval(spec);
    std::vector<PmfSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = dk_half_l_min + (dk_half_l_max - dk_half_l_min) * i / (count - 1);
        const double dk = 2.0 * x / spec.L;
        out.push_back({x, eval(dk)});
    }
    return out;
}

inline void write_pmf_csv(std::ostream& os, const std::vector<PmfSample>& samples) {
    os << "dk_halfL,re,im,abs\n";
    for (const auto& s : samples) {
        os << detail::fmt_g12(s.dk_half_l) << ',' << detail::fmt_g12(s.value.real()) << ','
           << detail::fmt_g12(s.value.imag()) << ',' << detail::fmt_g12(std::abs(s.value)) << '\n';
    }
}

} // namespace biphoton

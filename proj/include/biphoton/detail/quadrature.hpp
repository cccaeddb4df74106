#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <future>
#include <thread>
#include <vector>

#include "biphoton/common.hpp"

namespace biphoton::detail {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GaussLegendre rule(int n) {
        GaussLegendre r;
        r.nodes.resize(n);
        r.weights.resize(n);
        for (int i = 0; i < (n + 1) / 2; ++i) {
            // Chebyshev-like initial guess, refined by Newton on P_n.
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            r.nodes[i] = -x;
            r.nodes[n - 1 - i] = x;
            double w = 2.0 / ((1.0 - x * x) * dp * dp);
            r.weights[i] = w;
            r.weights[n - 1 - i] = w;
        }
        return r;
    }

    /// Rescales the rule to [a, b].
    GaussLegendre mapped(double a, double b) const {
        GaussLegendre out;
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        out.nodes.reserve(nodes.size());
        out.weights.reserve(weights.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            out.nodes.push_back(mid + half * nodes[i]);
            out.weights.push_back(half * weights[i]);
        }
        return out;
    }
};

// Gauss-Kronrod 7-15 pair: abscissae, Gauss weights, Kronrod weights.
inline constexpr double kGk15Nodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class Func>
std::complex<double> gk15(const Func& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = b - mid;
    std::complex<double> y0 = f(mid);
    std::complex<double> g7 = kGk15Nodes[0][1] * y0;
    std::complex<double> k15 = kGk15Nodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGk15Nodes[i][0];
        std::complex<double> yi = f(mid + dx) + f(mid - dx);
        g7 += kGk15Nodes[i][1] * yi;
        k15 += kGk15Nodes[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    err = std::abs(g7 - k15);
    err = 200.0 * err * std::sqrt(200.0 * err);
    return k15;
}

/// Adaptive complex-valued quadrature by interval bisection.
template <class Func>
std::complex<double> integrate_adaptive(const Func& f, double a, double b,
                                        double rel_tol = 1e-10, double abs_tol = 1e-300) {
    struct Interval {
        double a, b;
    };
    std::vector<Interval> stack{{a, b}};
    std::complex<double> total = 0.0;
    double coarse_err = 0.0;
    const std::complex<double> coarse = gk15(f, a, b, coarse_err);
    const double scale = std::abs(coarse);
    int evals = 1;
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        double err = 0.0;
        std::complex<double> s = gk15(f, iv.a, iv.b, err);
        if (err <= rel_tol * std::max(scale, std::abs(s)) || err <= abs_tol ||
            evals > 4000) {
            total += s;
            continue;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        stack.push_back({iv.a, mid});
        stack.push_back({mid, iv.b});
        evals += 2;
    }
    if (evals > 4000)
        throw numerical_error("adaptive quadrature failed to converge");
    return total;
}

/// Runs fn(i) for i in [0, count) across the hardware threads. Each index is
/// processed exactly once; fn must not touch shared mutable state.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_tasks = std::min<std::size_t>(hw, count);
    if (n_tasks <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(n_tasks);
    for (std::size_t t = 0; t < n_tasks; ++t) {
        futures.push_back(std::async(std::launch::async, [=, &fn]() {
            for (std::size_t i = t; i < count; i += n_tasks) fn(i);
        }));
    }
    for (auto& f : futures) f.get();
}

} // namespace biphoton::detail

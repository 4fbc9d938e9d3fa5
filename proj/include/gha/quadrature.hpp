#pragma once

// Double-exponential quadrature, two flavors:
//
//   tanh_sinh  on a finite interval (a, b):
//              x = mid + half * tanh((pi/2) sinh t)
//              absorbs integrable endpoint singularities (log, algebraic)
//              because nodes approach the endpoints double-exponentially.
//   exp_sinh   on (0, inf):
//              x = exp((pi/2) sinh t)
//              for integrands decaying at least exponentially at infinity.
//
// Both run the trapezoid rule in t and halve the step per level, reusing
// previous evaluations.  The reported error is the change produced by the
// last halving, which over-estimates the true error once the scheme is in
// its double-exponential convergence regime.
//
// Integrands are plain double(double).  Anything that can overflow at
// extreme nodes (u -> 0+ or u -> inf) should be written in log space and
// return 0 when the exponent falls below the underflow range; the engine
// skips nodes whose abscissa rounds onto an endpoint.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>

#include "gha/errors.hpp"

namespace gha::quad {

struct Config {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    int max_nodes = 1 << 14;
};

struct Result {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
    int nodes = 0;
    bool converged = false;
};

namespace detail {

inline constexpr double half_pi = 1.57079632679489661923;

// One-sided distance from the endpoint for the tanh-sinh map:
// 1 - tanh(u) = 2 / (e^{2u} + 1), computed without cancellation.
inline double endpoint_gap(double u) { return 2.0 / (std::exp(2.0 * u) + 1.0); }

template <class F>
struct TanhSinhEval {
    const F& f;
    double mid, half;
    // returns weight * f(x) at trapezoid coordinate t, or 0 if degenerate
    double operator()(double t) const {
        const double u = half_pi * std::sinh(t);
        const double gap = endpoint_gap(std::abs(u)); // distance/half to nearer endpoint
        const double x = u >= 0.0 ? (mid + half) - half * gap : (mid - half) + half * gap;
        if (gap <= 0.0 || x == mid + half || x == mid - half) return 0.0;
        const double dxdt = half * half_pi * std::cosh(t) * gap * (2.0 - gap);
        if (!(dxdt > 0.0) || !std::isfinite(dxdt)) return 0.0;
        const double fx = f(x);
        if (!std::isfinite(fx)) return 0.0; // endpoint limit handled by decay of dxdt
        return fx * dxdt;
    }
};

template <class F>
struct ExpSinhEval {
    const F& f;
    double operator()(double t) const {
        const double u = half_pi * std::sinh(t);
        if (u > 700.0 || u < -700.0) return 0.0;
        const double x = std::exp(u);
        const double fx = f(x);
        if (!std::isfinite(fx)) return 0.0;
        return fx * x * half_pi * std::cosh(t);
    }
};

// Trapezoid-with-doubling driver shared by both transforms.
template <class Eval>
Result refine(const Eval& eval, double t_max, const Config& cfg) {
    const double h0 = 0.5;
    Result res;
    double sum = eval(0.0);
    int nodes = 1;
    for (double t = h0; t <= t_max; t += h0) {
        sum += eval(t) + eval(-t);
        nodes += 2;
    }
    double prev = sum * h0;
    double h = h0;
    for (int level = 1;; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            add += eval(t) + eval(-t);
            nodes += 2;
        }
        const double value = 0.5 * prev + h * add;
        const double err = std::abs(value - prev);
        res.value = value;
        res.error = err;
        res.nodes = nodes;
        if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
            res.converged = true;
            return res;
        }
        if (2 * nodes > cfg.max_nodes) return res; // budget exhausted
        prev = value;
    }
}

} // namespace detail

// Integral of f over the finite interval (a, b).
template <class F>
Result tanh_sinh(const F& f, double a, double b, const Config& cfg = {}) {
    if (!(b > a))
        throw gha::domain_error("tanh_sinh: require b > a");
    detail::TanhSinhEval<F> eval{f, 0.5 * (a + b), 0.5 * (b - a)};
    return detail::refine(eval, 6.1, cfg);
}

// Integral of f over (0, inf); f must decay at least exponentially.
template <class F>
Result exp_sinh(const F& f, const Config& cfg = {}) {
    detail::ExpSinhEval<F> eval{f};
    return detail::refine(eval, 6.8, cfg);
}

// Convenience wrapper that turns non-convergence into an accuracy_error.
template <class F>
double integrate_finite(const F& f, double a, double b, const Config& cfg = {}) {
    const Result r = tanh_sinh(f, a, b, cfg);
    if (!r.converged)
        throw gha::accuracy_error("quadrature on finite interval did not converge "
                                  "(estimate " + std::to_string(r.error) + ")",
                                  r.error);
    return r.value;
}

template <class F>
double integrate_semi_infinite(const F& f, const Config& cfg = {}) {
    const Result r = exp_sinh(f, cfg);
    if (!r.converged)
        throw gha::accuracy_error("quadrature on (0, inf) did not converge "
                                  "(estimate " + std::to_string(r.error) + ")",
                                  r.error);
    return r.value;
}

// Quadrature budget configured from the environment (CLI hook).
inline Config config_from_env() {
    Config cfg;
    if (const char* cap = std::getenv("GHA_COHERENT_QUAD_MAX_NODES")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v > 16) cfg.max_nodes = static_cast<int>(v);
    }
    return cfg;
}

} // namespace gha::quad

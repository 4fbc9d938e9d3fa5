#pragma once

// Self-contained special-function kernel:
//
//   bessel_i / bessel_k   modified Bessel functions of integer order,
//                         with e^{-x} / e^{+x} scaled variants
//   polylog_neg_int       Li_{-n}(x) = sum_{k>=1} k^n x^k as the rational
//                         form  x * A_n(x) / (1-x)^{n+1}  with Eulerian
//                         polynomial numerator A_n
//   polylog_neg_series    direct series for real (non-integer) order
//   q_number / q_factorial  Gauss numbers [n]_q = (q^n-1)/(q-1)
//   log_gamma             Lanczos approximation (g = 7, 9 coefficients)
//
// Branch layout for the Bessel functions:
//   I_nu: ascending power series for x < 15 (all terms positive, no
//         cancellation); Miller downward recurrence normalized by
//         e^{-x}(I_0 + 2 sum I_k) = 1 for x >= 15.
//   K_nu: log-form ascending series for K_0, K_1 at x <= 2; Steed
//         continued fraction (CF2) for x > 2; stable upward recurrence
//         K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu for higher orders.
// Both branch pairs overlap on a window where they agree to ~1e-15;
// the switchover constants live in detail:: so tests can probe both.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gha/errors.hpp"

namespace gha::specfun {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

inline constexpr int max_bessel_order = 10;
inline constexpr int max_polylog_order = 12;

namespace detail {

inline constexpr double bessel_i_switch = 15.0; // series below, Miller above
inline constexpr double bessel_k_switch = 2.0;  // series below, CF2 above

inline void check_bessel_order(int nu, const char* fn) {
    if (nu < 0 || nu > max_bessel_order)
        throw gha::domain_error(std::string(fn) + ": order must be in [0, " +
                                std::to_string(max_bessel_order) + "], got " +
                                std::to_string(nu));
}

// Ascending series I_nu(x) = sum_k (x/2)^{nu+2k} / (k! (nu+k)!), scaled
// by e^{-x}.  All terms positive, so no cancellation at any x; used for
// x below the switchover where the term count stays small.
inline double bessel_i_series_scaled(int nu, double x) {
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    double nu_fact = 1.0;
    for (int k = 2; k <= nu; ++k) nu_fact *= k;
    const double half_x = 0.5 * x;
    double term = std::pow(half_x, nu) / nu_fact;
    double sum = term;
    const double x2_4 = half_x * half_x;
    for (int k = 1; k < 500; ++k) {
        term *= x2_4 / (static_cast<double>(k) * (nu + k));
        sum += term;
        if (term < sum * std::numeric_limits<double>::epsilon()) break;
    }
    return sum * std::exp(-x);
}

// Miller downward recurrence for e^{-x} I_nu(x).  Start index chosen so
// the contamination from the arbitrary seed decays below 1e-19 by the
// time the recurrence reaches the wanted order.
inline double bessel_i_miller_scaled(int nu, double x) {
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    int m = std::max(nu + 1, static_cast<int>(std::ceil(0.5 * x)) + 1);
    double decay = 0.0;
    while (decay < 45.0 && m < 100000000) {
        decay += std::log(2.0 * m / x);
        ++m;
    }
    m += 2;

    double p_above = 0.0, p_here = 1e-250; // seeds p_{m+1} = 0, p_m = tiny
    double norm = 0.0, wanted = 0.0;
    for (int k = m; k >= 1; --k) {
        const double p_below = p_above + (2.0 * k / x) * p_here;
        p_above = p_here;               // now p_k
        p_here = p_below;               // now p_{k-1}
        norm += 2.0 * p_above;
        if (k - 1 == nu) wanted = p_here;
        if (std::abs(p_here) > 1e250) { // rescale to dodge overflow
            p_here *= 1e-250;
            p_above *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    // loop leaves p_here = p_0 and norm = 2 sum_{k>=1} p_k
    norm += p_here;
    return wanted / norm;
}

// Ascending log-form series for K_0 and K_1 (A&S 9.6.11 at n = 0, 1),
// returned scaled by e^{+x}.  Valid for small x; used below the switch.
inline double bessel_k01_series_scaled(int nu, double x) {
    const double x2_4 = 0.25 * x * x;
    const double lh = std::log(0.5 * x);
    double sum;
    if (nu == 0) {
        // K_0 = -(ln(x/2) + gamma) I_0 + sum_{k>=1} (x^2/4)^k / (k!)^2 H_k
        double term = 1.0, harmonic = 0.0, series = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= x2_4 / (static_cast<double>(k) * k);
            harmonic += 1.0 / k;
            const double add = term * harmonic;
            series += add;
            if (add < 1e-18 * (std::abs(series) + 1.0)) break;
        }
        sum = -(lh + euler_gamma) * bessel_i_series_scaled(0, x) * std::exp(x) + series;
    } else {
        // K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_k [psi(k+1)+psi(k+2)] (x^2/4)^k / (k!(k+1)!)
        double term = 1.0, series = 0.0;
        double psi_a = -euler_gamma, psi_b = -euler_gamma + 1.0;
        for (int k = 0; k < 200; ++k) {
            if (k > 0) {
                term *= x2_4 / (static_cast<double>(k) * (k + 1));
                psi_a += 1.0 / k;
                psi_b += 1.0 / (k + 1);
            }
            const double add = term * (psi_a + psi_b);
            series += add;
            if (std::abs(add) < 1e-18 * (std::abs(series) + 1.0)) break;
        }
        sum = 1.0 / x + lh * bessel_i_series_scaled(1, x) * std::exp(x) - 0.25 * x * series;
    }
    return sum * std::exp(x);
}

// Steed continued fraction (CF2) for e^{+x} K_0(x) and e^{+x} K_1(x),
// x > 2.  Machine-precision for the whole range we use it on.
inline void bessel_k01_cf2_scaled(double x, double& k0s, double& k1s) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 20000;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= max_iter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    k0s = std::sqrt(pi / (2.0 * x)) / s;
    k1s = k0s * (x + 0.5 - h) / x;
}

} // namespace detail

// e^{-x} I_nu(x), integer 0 <= nu <= 10, x >= 0.
inline double bessel_i_scaled(int nu, double x) {
    detail::check_bessel_order(nu, "bessel_i");
    if (x < 0.0)
        throw gha::domain_error("bessel_i: x must be >= 0, got " + std::to_string(x));
    return x < detail::bessel_i_switch ? detail::bessel_i_series_scaled(nu, x)
                                       : detail::bessel_i_miller_scaled(nu, x);
}

// I_nu(x) to ~1e-14 relative.
inline double bessel_i(int nu, double x) {
    return bessel_i_scaled(nu, x) * std::exp(x);
}

// e^{+x} K_nu(x), integer 0 <= nu <= 10, x > 0.
inline double bessel_k_scaled(int nu, double x) {
    detail::check_bessel_order(nu, "bessel_k");
    if (x <= 0.0)
        throw gha::domain_error("bessel_k: x must be > 0, got " + std::to_string(x));
    double k0s, k1s;
    if (x <= detail::bessel_k_switch) {
        k0s = detail::bessel_k01_series_scaled(0, x);
        k1s = detail::bessel_k01_series_scaled(1, x);
    } else {
        detail::bessel_k01_cf2_scaled(x, k0s, k1s);
    }
    if (nu == 0) return k0s;
    // upward recurrence, stable for K
    double km = k0s, k = k1s;
    for (int j = 1; j < nu; ++j) {
        const double kp = km + (2.0 * j / x) * k;
        km = k;
        k = kp;
    }
    return k;
}

// K_nu(x) to ~1e-12 relative.
inline double bessel_k(int nu, double x) {
    return bessel_k_scaled(nu, x) * std::exp(-x);
}

// Eulerian number <n, k> as an exact integer, 0 <= n <= 12.
// Triangle recurrence <n,k> = (k+1)<n-1,k> + (n-k)<n-1,k-1>.
inline long long eulerian(int n, int k) {
    if (n < 0 || n > max_polylog_order)
        throw gha::domain_error("eulerian: n must be in [0, 12], got " + std::to_string(n));
    struct Table {
        std::array<std::array<long long, max_polylog_order + 1>, max_polylog_order + 1> t{};
        Table() {
            t[0][0] = 1;
            for (int row = 1; row <= max_polylog_order; ++row)
                for (int col = 0; col < row; ++col) {
                    const long long upper = t[row - 1][col];
                    const long long left = col > 0 ? t[row - 1][col - 1] : 0;
                    t[row][col] = (col + 1) * upper + (row - col) * left;
                }
        }
    };
    static const Table table;
    if (k < 0 || k >= std::max(1, n)) return 0;
    return table.t[n][k];
}

// Li_{-alpha}(x) for integer 1 <= alpha <= 12, 0 <= x < 1, via the
// rational closed form  x * sum_k <alpha,k> x^k / (1-x)^{alpha+1}.
inline double polylog_neg_int(int alpha, double x) {
    if (alpha < 1 || alpha > max_polylog_order)
        throw gha::domain_error("polylog_neg_int: order must be in [1, 12], got " +
                                std::to_string(alpha));
    if (x < 0.0 || x >= 1.0)
        throw gha::domain_error("polylog_neg_int: x must be in [0, 1), got " +
                                std::to_string(x));
    if (x == 0.0) return 0.0;
    double num = 0.0;
    for (int k = alpha - 1; k >= 0; --k)
        num = num * x + static_cast<double>(eulerian(alpha, k));
    return x * num / std::pow(1.0 - x, alpha + 1);
}

// Direct series sum_{k>=1} k^alpha x^k for real alpha >= 0, 0 <= x < 1.
// Serves non-integer orders, where no rational form exists.
inline double polylog_neg_series(double alpha, double x) {
    if (x < 0.0 || x >= 1.0)
        throw gha::domain_error("polylog_neg_series: x must be in [0, 1), got " +
                                std::to_string(x));
    if (x == 0.0) return 0.0;
    double sum = 0.0;
    double term = x; // k = 1
    for (int k = 1; k < 2000000; ++k) {
        sum += term;
        const double next = term * x * std::pow(1.0 + 1.0 / k, alpha);
        if (next < 0.25 * std::numeric_limits<double>::epsilon() * sum * (1.0 - x)) {
            sum += next / (1.0 - x); // geometric bound on the remainder
            return sum;
        }
        term = next;
    }
    throw gha::accuracy_error("polylog_neg_series: no convergence at x = " +
                              std::to_string(x), std::abs(term));
}

inline void check_q(double q, const char* fn) {
    if (!(q > 0.0) || q > 1.0)
        throw gha::domain_error(std::string(fn) + ": q must be in (0, 1], got " +
                                std::to_string(q));
}

// Gauss number [n]_q = (q^n - 1)/(q - 1); [n]_1 = n by the limit.
inline double q_number(int n, double q) {
    check_q(q, "q_number");
    if (n < 0)
        throw gha::domain_error("q_number: n must be >= 0");
    if (q == 1.0) return static_cast<double>(n);
    return std::expm1(n * std::log(q)) / (q - 1.0);
}

// log([n]_q!) with [0]_q! = 1.
inline double log_q_factorial(int n, double q) {
    check_q(q, "log_q_factorial");
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += std::log(q_number(k, q));
    return acc;
}

// [n]_q! = [1]_q [2]_q ... [n]_q as a direct product.
inline double q_factorial(int n, double q) {
    check_q(q, "q_factorial");
    double acc = 1.0;
    for (int k = 1; k <= n; ++k) acc *= q_number(k, q);
    return acc;
}

// ln Gamma(x), x > 0, Lanczos approximation (g = 7, 9 terms), ~1e-14
// relative away from the zeros at x = 1, 2.
inline double log_gamma(double x) {
    static const double coeff[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (!(x > 0.0))
        throw gha::domain_error("log_gamma: x must be > 0, got " + std::to_string(x));
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = coeff[0];
    for (int i = 1; i < 9; ++i) acc += coeff[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

// log(n!) through log_gamma; exact at small n up to rounding.
inline double log_factorial(int n) {
    if (n < 0) throw gha::domain_error("log_factorial: n must be >= 0");
    return log_gamma(static_cast<double>(n) + 1.0);
}

} // namespace gha::specfun

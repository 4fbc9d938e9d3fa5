#pragma once

// Spectrum families epsilon_{n+1} = f(epsilon_n) and the representation
// data they induce:
//
//   alpha_n = f^{(n)}(alpha_0)          J_0 eigenvalues
//   N_n^2   = alpha_{n+1} - alpha_0     ladder coefficients
//   N_{n-1}! = N_0 N_1 ... N_{n-1},     N_{-1}! = 1
//
// Catalog:
//   harmonic      f(x) = x + 1,                    alpha_0 = 0, eps_n = n
//   q-deformed    f(x) = q x + 1,                  alpha_0 free (default 0)
//   power-class   f(x) = (1/(2 - x^{1/a}))^a,      alpha_0 = 0, eps_n = (n/(n+1))^a
//   square well   f(x) = x + 2 sqrt(x) + 1,        alpha_0 = 1, eps_n = (n+1)^2
//   custom        levels table or f_expr from the expression grammar
//
// Factorial-like products are held in log space throughout: the square
// well N_{n-1}! = sqrt(n!(n+2)!/2) overflows and the power-class
// (n+1)^{-a/2} underflows well before n = 200 in direct arithmetic.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gha/errors.hpp"
#include "gha/expression.hpp"
#include "gha/specfun.hpp"

namespace gha {

enum class Family { harmonic, q_deformed, power_class, square_well, custom };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::harmonic: return "harmonic";
        case Family::q_deformed: return "q-deformed";
        case Family::power_class: return "power-class";
        case Family::square_well: return "square-well";
        case Family::custom: return "custom";
    }
    return "?";
}

// Optional completeness weight for custom spectra.  The expression grammar
// has no logarithm, so a (-ln x)^k endpoint factor is declared separately.
struct CustomWeightSpec {
    expr::Expression factor;  // w(x) / (-ln x)^log_power, f_expr grammar
    int log_power = 0;
    double support_upper = 1.0; // may be +inf
    bool present() const { return !factor.empty(); }
};

class Spectrum {
public:
    static Spectrum harmonic() { return Spectrum(Family::harmonic, 0.0); }

    static Spectrum q_deformed(double q, double alpha0 = 0.0) {
        specfun::check_q(q, "Spectrum::q_deformed");
        Spectrum s(Family::q_deformed, alpha0);
        s.q_ = q;
        return s;
    }

    static Spectrum power_class(double alpha) {
        if (!(alpha >= 1.0))
            throw gha::domain_error("Spectrum::power_class: alpha must be >= 1, got " +
                                    std::to_string(alpha));
        Spectrum s(Family::power_class, 0.0);
        s.alpha_exp_ = alpha;
        return s;
    }

    static Spectrum square_well() { return Spectrum(Family::square_well, 1.0); }

    static Spectrum custom_levels(std::vector<double> levels,
                                  CustomWeightSpec weight = {}) {
        if (levels.size() < 2)
            throw gha::domain_error("Spectrum::custom_levels: need at least 2 levels");
        Spectrum s(Family::custom, levels.front());
        s.levels_ = std::move(levels);
        s.weight_ = std::move(weight);
        return s;
    }

    static Spectrum custom_expr(expr::Expression f, double alpha0,
                                CustomWeightSpec weight = {}) {
        if (f.empty())
            throw gha::domain_error("Spectrum::custom_expr: empty expression");
        Spectrum s(Family::custom, alpha0);
        s.f_expr_ = std::move(f);
        s.weight_ = std::move(weight);
        return s;
    }

    static Spectrum custom_expr(const std::string& f_src, double alpha0,
                                CustomWeightSpec weight = {}) {
        return custom_expr(expr::Expression::parse(f_src), alpha0, std::move(weight));
    }

    Family family() const { return family_; }
    double alpha0() const { return alpha0_; }

    double q() const {
        require(Family::q_deformed, "q");
        return q_;
    }
    double alpha_exponent() const {
        require(Family::power_class, "alpha_exponent");
        return alpha_exp_;
    }
    // power-class exponent as an exact small integer, when it is one
    std::optional<int> integer_exponent() const {
        if (family_ != Family::power_class) return std::nullopt;
        const double r = std::round(alpha_exp_);
        if (std::abs(alpha_exp_ - r) < 1e-9 && r >= 1 && r <= specfun::max_polylog_order)
            return static_cast<int>(r);
        return std::nullopt;
    }

    const std::vector<double>& levels() const { return levels_; }
    const CustomWeightSpec& custom_weight() const { return weight_; }

    bool has_characteristic_function() const {
        return family_ != Family::custom || !f_expr_.empty();
    }
    bool has_closed_levels() const {
        return family_ != Family::custom || !levels_.empty();
    }

    // characteristic function f with epsilon_{n+1} = f(epsilon_n)
    double eval_f(double x) const {
        switch (family_) {
            case Family::harmonic: return x + 1.0;
            case Family::q_deformed: return q_ * x + 1.0;
            case Family::power_class: {
                if (x < 0.0)
                    throw gha::domain_error("eval_f(power-class): x^{1/alpha} of negative x");
                if (alpha_exp_ == 1.0) {
                    if (x >= 2.0)
                        throw gha::domain_error("eval_f(power-class, alpha=1): pole at x = 2");
                    return 1.0 / (2.0 - x);
                }
                const double root = std::pow(x, 1.0 / alpha_exp_);
                const double den = 2.0 - root;
                if (den <= 0.0)
                    throw gha::domain_error("eval_f(power-class): x^{1/alpha} >= 2");
                return std::pow(den, -alpha_exp_);
            }
            case Family::square_well:
                if (x < 0.0)
                    throw gha::domain_error("eval_f(square-well): sqrt of negative x");
                return x + 2.0 * std::sqrt(x) + 1.0;
            case Family::custom:
                if (f_expr_.empty())
                    throw gha::unsupported_error(
                        "eval_f: custom spectrum given by a levels table has no "
                        "characteristic function");
                return f_expr_(x);
        }
        throw std::logic_error("eval_f: corrupt family");
    }

    // closed-form epsilon_n where the family has one
    double closed_level(int n) const {
        if (n < 0) throw gha::range_error("closed_level: n must be >= 0");
        switch (family_) {
            case Family::harmonic: return alpha0_ + n;
            case Family::q_deformed:
                // exact iterate of qx + 1: q^n alpha_0 + [n]_q
                return std::pow(q_, n) * alpha0_ + specfun::q_number(n, q_);
            case Family::power_class: {
                const double base = static_cast<double>(n) / (n + 1);
                return std::pow(base, alpha_exp_);
            }
            case Family::square_well: {
                const double m = n + 1;
                return m * m;
            }
            case Family::custom:
                if (levels_.empty())
                    throw gha::unsupported_error("closed_level: expression-defined custom "
                                                 "spectrum has no closed form");
                if (static_cast<size_t>(n) >= levels_.size())
                    throw gha::range_error("closed_level: n beyond the levels table");
                return levels_[static_cast<size_t>(n)];
        }
        throw std::logic_error("closed_level: corrupt family");
    }

    std::string name() const {
        switch (family_) {
            case Family::harmonic: return "harmonic";
            case Family::q_deformed: return "q-deformed(q=" + std::to_string(q_) + ")";
            case Family::power_class:
                return "power-class(alpha=" + std::to_string(alpha_exp_) + ")";
            case Family::square_well: return "square-well";
            case Family::custom:
                return levels_.empty() ? "custom(f_expr=" + f_expr_.source() + ")"
                                       : "custom(levels)";
        }
        return "?";
    }

private:
    Spectrum(Family f, double alpha0) : family_(f), alpha0_(alpha0) {}

    void require(Family f, const char* what) const {
        if (family_ != f)
            throw gha::domain_error(std::string(what) + ": not available for family " +
                                    family_name(family_));
    }

    Family family_;
    double alpha0_;
    double q_ = 1.0;
    double alpha_exp_ = 1.0;
    std::vector<double> levels_;
    expr::Expression f_expr_;
    CustomWeightSpec weight_;
};

inline double eval_f(const Spectrum& spec, double x) { return spec.eval_f(x); }

// Precomputed representation data up to a truncation size.
struct LadderData {
    int n_max = 0;
    std::vector<double> alpha;     // length n_max + 1
    std::vector<double> n_coeff;   // length n_max, N_k = n_coeff[k]
    std::vector<double> log_nfact; // length n_max + 1, log_nfact[n] = log(N_{n-1}!)
    double radius_x = 0.0;         // convergence radius of sum x^n/(N_{n-1}!)^2, in x = |z|^2
    bool n_increasing = true;      // N_k non-decreasing over the precomputed range

    double log_nfactorial(int n) const {
        if (n < 0 || n > n_max)
            throw gha::range_error("log_nfactorial: n = " + std::to_string(n) +
                                   " outside precomputed range [0, " +
                                   std::to_string(n_max) + "]");
        return log_nfact[static_cast<size_t>(n)];
    }
};

inline double log_nfactorial(const LadderData& ladder, int n) {
    return ladder.log_nfactorial(n);
}

namespace detail {

// Convergence radius (in x = |z|^2) equals lim N_n^2 when it exists.
inline double closed_radius_x(const Spectrum& spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (spec.family()) {
        case Family::harmonic: return inf;
        case Family::q_deformed: {
            const double q = spec.q();
            if (q == 1.0) return inf;
            const double n0_sq = spec.alpha0() * (q - 1.0) + 1.0;
            return n0_sq / (1.0 - q);
        }
        case Family::power_class: return 1.0;
        case Family::square_well: return inf;
        case Family::custom: break;
    }
    throw gha::unsupported_error("closed_radius_x: custom spectra are estimated from data");
}

// Ratio-test estimate of lim N_n^2 from the precomputed tail; custom
// families only.  Deliberately conservative for gating purposes.
inline double estimate_radius_x(const std::vector<double>& n_coeff) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const size_t k = n_coeff.size();
    const double last = n_coeff[k - 1] * n_coeff[k - 1];
    if (last > 1e12) return inf;
    if (k >= 3) {
        const double prev = n_coeff[k - 2] * n_coeff[k - 2];
        const double growth = (last - prev) * static_cast<double>(k);
        if (growth > last) return inf; // still growing substantially: treat as entire
        return last + std::max(0.0, growth);
    }
    return last;
}

} // namespace detail

// Builds alpha_n, N_n and log(N_{n-1}!) up to n_max.  Closed-form levels
// are used where the family has them and cross-checked against one
// iteration step of f; custom expression spectra iterate f directly.
inline LadderData build_ladder(const Spectrum& spec, int n_max) {
    if (n_max < 1)
        throw gha::domain_error("build_ladder: n_max must be >= 1");
    if (spec.family() == Family::custom && !spec.levels().empty() &&
        spec.levels().size() < static_cast<size_t>(n_max) + 1)
        throw gha::range_error("build_ladder: levels table has " +
                               std::to_string(spec.levels().size()) +
                               " entries, need n_max + 1 = " + std::to_string(n_max + 1));

    LadderData ladder;
    ladder.n_max = n_max;
    ladder.alpha.resize(static_cast<size_t>(n_max) + 1);
    ladder.n_coeff.resize(static_cast<size_t>(n_max));
    ladder.log_nfact.resize(static_cast<size_t>(n_max) + 1);

    const bool closed = spec.has_closed_levels();
    ladder.alpha[0] = spec.alpha0();
    for (int n = 1; n <= n_max; ++n) {
        ladder.alpha[static_cast<size_t>(n)] =
            closed ? spec.closed_level(n) : spec.eval_f(ladder.alpha[static_cast<size_t>(n) - 1]);
    }

    // one-step recurrence consistency for catalog closed forms
    if (closed && spec.family() != Family::custom) {
        for (int n = 0; n < n_max; ++n) {
            const double expect = ladder.alpha[static_cast<size_t>(n) + 1];
            const double got = spec.eval_f(ladder.alpha[static_cast<size_t>(n)]);
            if (std::abs(got - expect) > 1e-12 * std::max(1.0, std::abs(expect)))
                throw gha::domain_error("build_ladder: closed-form levels disagree with f at n = " +
                                        std::to_string(n));
        }
    }

    double comp = 0.0; // Kahan carry for the log-factorial accumulation
    ladder.log_nfact[0] = 0.0;
    double acc = 0.0;
    for (int k = 0; k < n_max; ++k) {
        const double n_sq = ladder.alpha[static_cast<size_t>(k) + 1] - ladder.alpha[0];
        if (!(n_sq > 0.0))
            throw gha::domain_error("build_ladder: not ladder-representable, N_k^2 <= 0 at k = " +
                                    std::to_string(k) +
                                    " (coherent-state construction impossible)");
        const double n_k = std::sqrt(n_sq);
        ladder.n_coeff[static_cast<size_t>(k)] = n_k;
        if (k > 0 && n_k < ladder.n_coeff[static_cast<size_t>(k) - 1])
            ladder.n_increasing = false;

        const double term = std::log(n_k) - comp;
        const double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
        ladder.log_nfact[static_cast<size_t>(k) + 1] = acc;
    }

    ladder.radius_x = spec.family() == Family::custom
                          ? detail::estimate_radius_x(ladder.n_coeff)
                          : detail::closed_radius_x(spec);
    return ladder;
}

} // namespace gha

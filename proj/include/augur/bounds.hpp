#pragma once

#include "augur/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace augur::bounds {

/// Parameters a bound was evaluated at; unset fields do not apply.
struct BoundParameters {
    std::optional<std::int64_t> b;
    std::optional<double> lambda;
    std::optional<double> eta;
    std::optional<double> opt;
    std::optional<std::int64_t> n;
    std::optional<double> x;  // auxiliary inequalities
};

/// One checked inequality `observed <= bound (+ tolerance)`.
struct BoundReport {
    std::string bound_name;
    BoundParameters parameters;
    double bound_value = 0.0;
    double observed_ratio = 0.0;
    double tolerance = 1e-9;
    bool satisfied = true;

    /// observed - bound; positive means violated (before tolerance).
    double slack() const { return observed_ratio - bound_value; }
};

inline BoundReport make_report(std::string name, BoundParameters params, double bound, double observed,
                               double tolerance = 1e-9) {
    BoundReport r{std::move(name), params, bound, observed, tolerance, false};
    r.satisfied = observed <= bound + tolerance;
    return r;
}

// --- ski rental -----------------------------------------------------------

/// Deterministic ski rental: min{(1+l)/l, (1+l) + eta/((1-l) OPT)}.
inline double det_ski_bound(std::int64_t b, double lambda, double eta, double opt) {
    (void)b;
    require(lambda > 0.0 && lambda < 1.0, "det_ski_bound: lambda must lie in (0, 1)");
    require(opt >= 1.0, "det_ski_bound: OPT must be >= 1");
    require(eta >= 0.0, "det_ski_bound: eta must be >= 0");
    const double robust = (1.0 + lambda) / lambda;
    const double consistent = (1.0 + lambda) + eta / ((1.0 - lambda) * opt);
    return std::min(robust, consistent);
}

inline double det_ski_robustness(double lambda) { return (1.0 + lambda) / lambda; }
inline double det_ski_consistency(double lambda) { return 1.0 + lambda; }

/// (1 + 1/b) / (1 - e^{-(l - 1/b)})
inline double rand_ski_robustness(std::int64_t b, double lambda) {
    const double inv_b = 1.0 / static_cast<double>(b);
    return (1.0 + inv_b) / -std::expm1(-(lambda - inv_b));
}

/// l / (1 - e^{-l})
inline double rand_ski_consistency(double lambda) { return lambda / -std::expm1(-lambda); }

/// Randomized ski rental: min{robustness, consistency * (1 + eta/OPT)}.
inline double rand_ski_bound(std::int64_t b, double lambda, double eta, double opt) {
    require(b >= 2, "rand_ski_bound: b must be >= 2");
    require(lambda > 1.0 / static_cast<double>(b) && lambda <= 1.0,
            "rand_ski_bound: lambda must lie in (1/b, 1]");
    require(opt >= 1.0, "rand_ski_bound: OPT must be >= 1");
    require(eta >= 0.0, "rand_ski_bound: eta must be >= 0");
    return std::min(rand_ski_robustness(b, lambda), rand_ski_consistency(lambda) * (1.0 + eta / opt));
}

/// Naive prediction-following algorithm: ALG <= OPT + eta, as a ratio.
inline double naive_ski_bound(double eta, double opt) { return 1.0 + eta / opt; }

// --- scheduling -----------------------------------------------------------

/// Shortest predicted job first: 1 + 2 eta / n.
inline double spjf_bound(std::int64_t n, double eta) {
    require(n >= 1, "spjf_bound: n must be >= 1");
    return 1.0 + 2.0 * eta / static_cast<double>(n);
}

/// Preferential round-robin: min{(1/l)(1 + 2 eta/n), 2/(1-l)}.
inline double prr_bound(std::int64_t n, double eta, double lambda) {
    require(lambda > 0.0 && lambda < 1.0, "prr_bound: lambda must lie in (0, 1)");
    return std::min(spjf_bound(n, eta) / lambda, 2.0 / (1.0 - lambda));
}

/// Preferential round-robin with exact predictions: (1+l)/(2l).
inline double prr_perfect_bound(double lambda) {
    require(lambda > 0.0 && lambda < 1.0, "prr_perfect_bound: lambda must lie in (0, 1)");
    return (1.0 + lambda) / (2.0 * lambda);
}

inline constexpr double kRoundRobinRatio = 2.0;

// --- auxiliary inequalities -----------------------------------------------
//
// For 0 < x <= 1:
//   (i)   e^{x - 1/x} <= 1
//   (ii)  e^{-1/x} <= x/e
//   (iii) x/e <= 1 - 1/x + e^{-x}/x
// For integer b >= 2 and l in (1/b, 1):
//   (iv)  (1/l + 1/b)/(1 - e^{-1/l}) <= (1 + 1/b)/(1 - e^{-(l - 1/b)})

inline double exp_gap_lhs(double x) { return std::exp(x - 1.0 / x); }
inline double inv_exp_lhs(double x) { return std::exp(-1.0 / x); }
inline double inv_exp_rhs(double x) { return x / std::exp(1.0); }
inline double chord_lhs(double x) { return x / std::exp(1.0); }

/// 1 - 1/x + e^{-x}/x, written as 1 - (1 - e^{-x})/x to avoid cancellation near 0.
inline double chord_rhs(double x) { return 1.0 + std::expm1(-x) / x; }

inline double support_bound_lhs(std::int64_t b, double lambda) {
    const double inv_b = 1.0 / static_cast<double>(b);
    return (1.0 / lambda + inv_b) / -std::expm1(-1.0 / lambda);
}

inline double support_bound_rhs(std::int64_t b, double lambda) { return rand_ski_robustness(b, lambda); }

struct AuxiliaryGrid {
    double x_step = 1e-3;          // x in (0, 1]
    std::int64_t b_min = 2;
    std::int64_t b_max = 1000;
    int lambda_points = 100;       // per b, strictly inside (1/b, 1)
    double tolerance = 1e-12;
};

inline std::vector<BoundReport> check_auxiliary_inequalities(const AuxiliaryGrid& grid = {}) {
    require(grid.x_step > 0.0 && grid.x_step <= 1.0, "auxiliary grid: x step must lie in (0, 1]");
    require(grid.b_min >= 2 && grid.b_max >= grid.b_min, "auxiliary grid: need 2 <= b_min <= b_max");
    require(grid.lambda_points >= 1, "auxiliary grid: need at least one lambda point");

    std::vector<BoundReport> out;
    const auto steps = static_cast<std::int64_t>(std::llround(1.0 / grid.x_step));
    for (std::int64_t s = 1; s <= steps; ++s) {
        const double x = std::min(1.0, static_cast<double>(s) * grid.x_step);
        BoundParameters p;
        p.x = x;
        out.push_back(make_report("aux_exp_gap", p, 1.0, exp_gap_lhs(x), grid.tolerance));
        out.push_back(make_report("aux_inv_exp", p, inv_exp_rhs(x), inv_exp_lhs(x), grid.tolerance));
        out.push_back(make_report("aux_chord", p, chord_rhs(x), chord_lhs(x), grid.tolerance));
    }
    for (std::int64_t b = grid.b_min; b <= grid.b_max; ++b) {
        const double lo = 1.0 / static_cast<double>(b);
        for (int i = 1; i <= grid.lambda_points; ++i) {
            const double lambda = lo + (1.0 - lo) * static_cast<double>(i) / (grid.lambda_points + 1);
            BoundParameters p;
            p.b = b;
            p.lambda = lambda;
            out.push_back(make_report("aux_long_support", p, support_bound_rhs(b, lambda),
                                      support_bound_lhs(b, lambda), grid.tolerance));
        }
    }
    return out;
}

}  // namespace augur::bounds

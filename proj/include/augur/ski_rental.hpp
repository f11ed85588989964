#pragma once

#include "augur/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace augur::ski {

/// 1-based day index; "buy on day j" means j-1 days were rented first.
using Day = std::int64_t;

/// A buy decision. std::nullopt means the algorithm never buys.
using BuyDay = std::optional<Day>;

namespace detail {

// lambda arrives as a decimal literal such as 0.1; 0.1 * 30 evaluates to
// 3.0000000000000004 in binary floating point. Values within 1e-9 of an
// integer are treated as that integer before rounding.
inline Day ceil_snapped(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<Day>(r);
    return static_cast<Day>(std::ceil(v));
}

inline Day floor_snapped(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<Day>(r);
    return static_cast<Day>(std::floor(v));
}

inline std::string fmt_real(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace detail

/// One ski rental instance: buy cost b (in rent-day units), true number of
/// skiing days x, and a predicted number of days y.
class SkiInstance {
public:
    SkiInstance(std::int64_t buy_cost, std::int64_t days, double predicted)
        : buy_cost_(buy_cost), days_(days), predicted_(predicted) {
        require(buy_cost >= 2, "ski instance: buy cost b must be >= 2");
        require(days >= 1, "ski instance: skiing days x must be >= 1");
        require(std::isfinite(predicted) && predicted >= 0.0,
                "ski instance: prediction y must be finite and >= 0");
    }

    std::int64_t buy_cost() const { return buy_cost_; }
    std::int64_t days() const { return days_; }
    double predicted() const { return predicted_; }

    /// |y - x|
    double error() const { return std::abs(predicted_ - static_cast<double>(days_)); }

    /// Whether the prediction says "ski at least b days". A tie y == b counts.
    bool predicts_long_season() const { return predicted_ >= static_cast<double>(buy_cost_); }

private:
    std::int64_t buy_cost_;
    std::int64_t days_;
    double predicted_;
};

/// Probability mass over buy days {1, ..., m}.
class BuyDayDistribution {
public:
    explicit BuyDayDistribution(std::vector<double> mass) : mass_(std::move(mass)) {
        require(!mass_.empty(), "buy-day distribution: support must be non-empty");
        double sum = 0.0, comp = 0.0;
        for (double p : mass_) {
            require(std::isfinite(p) && p >= 0.0, "buy-day distribution: masses must be >= 0");
            const double yk = p - comp;
            const double t = sum + yk;
            comp = (t - sum) - yk;
            sum = t;
        }
        require(std::abs(sum - 1.0) <= 1e-12, "buy-day distribution: masses must sum to 1");
    }

    static BuyDayDistribution point_mass(Day day) {
        require(day >= 1, "buy-day distribution: day must be >= 1");
        std::vector<double> m(static_cast<std::size_t>(day), 0.0);
        m.back() = 1.0;
        return BuyDayDistribution(std::move(m));
    }

    std::size_t support_size() const { return mass_.size(); }
    const std::vector<double>& mass() const { return mass_; }

    /// Probability of buying on `day` (1-based); zero outside the support.
    double probability(Day day) const {
        if (day < 1 || static_cast<std::size_t>(day) > mass_.size()) return 0.0;
        return mass_[static_cast<std::size_t>(day - 1)];
    }

private:
    std::vector<double> mass_;
};

enum class SkiAlgorithm {
    BreakEven,            // rent b-1 days, buy on day b
    KarlinClassic,        // classical e/(e-1) randomized algorithm
    NaiveConsistent,      // trust the prediction blindly
    DeterministicLambda,  // prediction-aware, robust
    RandomizedLambda,
};

struct SkiPolicy {
    SkiAlgorithm algorithm = SkiAlgorithm::DeterministicLambda;
    double lambda = 1.0;

    static SkiPolicy break_even() { return {SkiAlgorithm::BreakEven, 1.0}; }
    static SkiPolicy karlin() { return {SkiAlgorithm::KarlinClassic, 1.0}; }
    static SkiPolicy naive() { return {SkiAlgorithm::NaiveConsistent, 1.0}; }
    static SkiPolicy deterministic(double lambda) { return {SkiAlgorithm::DeterministicLambda, lambda}; }
    static SkiPolicy randomized(double lambda) { return {SkiAlgorithm::RandomizedLambda, lambda}; }

    bool is_randomized() const {
        return algorithm == SkiAlgorithm::KarlinClassic || algorithm == SkiAlgorithm::RandomizedLambda;
    }
};

inline void validate_deterministic_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw InvalidArgument("deterministic lambda must lie in (0, 1]; got " + detail::fmt_real(lambda));
}

inline void validate_randomized_lambda(double lambda, std::int64_t buy_cost) {
    const double lo = 1.0 / static_cast<double>(buy_cost);
    if (!(lambda > lo && lambda <= 1.0))
        throw InvalidArgument("randomized lambda must lie in (1/b, 1] = (" + detail::fmt_real(lo) +
                              ", 1] for b = " + std::to_string(buy_cost) + "; got " +
                              detail::fmt_real(lambda));
}

/// Offline optimum: min{b, x}.
inline std::int64_t ski_opt(const SkiInstance& inst) {
    return std::min(inst.buy_cost(), inst.days());
}

/// Cost of renting until `buy_day` and buying at the start of that day.
inline std::int64_t simulate_buy_day(const SkiInstance& inst, Day buy_day) {
    require(buy_day >= 1, "buy day must be >= 1");
    if (inst.days() >= buy_day) return inst.buy_cost() + buy_day - 1;
    return inst.days();
}

inline std::int64_t simulate_buy_day(const SkiInstance& inst, BuyDay buy_day) {
    if (!buy_day) return inst.days();
    return simulate_buy_day(inst, *buy_day);
}

/// Buy on day 1 if y >= b, otherwise rent forever.
inline BuyDay naive_buy_day(const SkiInstance& inst) {
    if (inst.predicts_long_season()) return Day{1};
    return std::nullopt;
}

/// ceil(lambda*b) when the prediction says y >= b, ceil(b/lambda) otherwise.
inline Day deterministic_buy_day(const SkiInstance& inst, double lambda) {
    validate_deterministic_lambda(lambda);
    const double b = static_cast<double>(inst.buy_cost());
    if (inst.predicts_long_season()) return detail::ceil_snapped(lambda * b);
    return detail::ceil_snapped(b / lambda);
}

/// Support size used by the randomized algorithm: floor(lambda*b) when
/// y >= b, ceil(b/lambda) otherwise.
inline Day randomized_support_size(const SkiInstance& inst, double lambda) {
    validate_randomized_lambda(lambda, inst.buy_cost());
    const double b = static_cast<double>(inst.buy_cost());
    if (inst.predicts_long_season()) return detail::floor_snapped(lambda * b);
    return detail::ceil_snapped(b / lambda);
}

/// Truncated-geometric buy-day distribution
///   p_i = ((b-1)/b)^(m-i) / (b * (1 - (1 - 1/b)^m)),  i = 1..m.
inline BuyDayDistribution randomized_distribution(const SkiInstance& inst, double lambda) {
    const Day m = randomized_support_size(inst, lambda);
    const double b = static_cast<double>(inst.buy_cost());
    const double r = (b - 1.0) / b;
    const double norm = 1.0 / (b * (1.0 - std::pow(r, static_cast<double>(m))));
    std::vector<double> mass(static_cast<std::size_t>(m));
    for (Day i = 1; i <= m; ++i)
        mass[static_cast<std::size_t>(i - 1)] = std::pow(r, static_cast<double>(m - i)) * norm;
    return BuyDayDistribution(std::move(mass));
}

/// Exact expected cost of a buy-day distribution on an instance, by direct
/// summation over the support.
inline double expected_cost(const SkiInstance& inst, const BuyDayDistribution& dist) {
    double total = 0.0;
    const auto& mass = dist.mass();
    for (std::size_t i = 0; i < mass.size(); ++i)
        total += mass[i] * static_cast<double>(simulate_buy_day(inst, static_cast<Day>(i + 1)));
    return total;
}

inline double randomized_expected_cost(const SkiInstance& inst, double lambda) {
    return expected_cost(inst, randomized_distribution(inst, lambda));
}

/// Inverse-CDF draw of a buy day.
inline Day sample_buy_day(const BuyDayDistribution& dist, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    double cdf = 0.0;
    const auto& mass = dist.mass();
    for (std::size_t i = 0; i < mass.size(); ++i) {
        cdf += mass[i];
        if (u < cdf) return static_cast<Day>(i + 1);
    }
    // u landed in the rounding gap above the last partial sum
    for (std::size_t i = mass.size(); i > 0; --i)
        if (mass[i - 1] > 0.0) return static_cast<Day>(i);
    return static_cast<Day>(mass.size());
}

/// Buy-day distribution a policy commits to on an instance. Deterministic
/// policies yield a point mass; the naive policy's "never buy" has no
/// distribution and is rejected here (use policy_expected_cost).
inline BuyDayDistribution policy_distribution(const SkiInstance& inst, const SkiPolicy& policy) {
    switch (policy.algorithm) {
        case SkiAlgorithm::BreakEven: return BuyDayDistribution::point_mass(deterministic_buy_day(inst, 1.0));
        case SkiAlgorithm::DeterministicLambda:
            return BuyDayDistribution::point_mass(deterministic_buy_day(inst, policy.lambda));
        case SkiAlgorithm::KarlinClassic: return randomized_distribution(inst, 1.0);
        case SkiAlgorithm::RandomizedLambda: return randomized_distribution(inst, policy.lambda);
        case SkiAlgorithm::NaiveConsistent: break;
    }
    throw InvalidArgument("naive policy may never buy; it has no buy-day distribution");
}

/// Exact expected cost (the realized cost for deterministic policies).
inline double policy_expected_cost(const SkiInstance& inst, const SkiPolicy& policy) {
    switch (policy.algorithm) {
        case SkiAlgorithm::NaiveConsistent:
            return static_cast<double>(simulate_buy_day(inst, naive_buy_day(inst)));
        case SkiAlgorithm::BreakEven:
            return static_cast<double>(simulate_buy_day(inst, deterministic_buy_day(inst, 1.0)));
        case SkiAlgorithm::DeterministicLambda:
            return static_cast<double>(simulate_buy_day(inst, deterministic_buy_day(inst, policy.lambda)));
        case SkiAlgorithm::KarlinClassic: return randomized_expected_cost(inst, 1.0);
        case SkiAlgorithm::RandomizedLambda: return randomized_expected_cost(inst, policy.lambda);
    }
    return 0.0;
}

/// Cost of one realization: randomized policies draw a buy day from `rng`.
inline double policy_sampled_cost(const SkiInstance& inst, const SkiPolicy& policy, Rng& rng) {
    if (!policy.is_randomized()) return policy_expected_cost(inst, policy);
    const auto dist = policy_distribution(inst, policy);
    return static_cast<double>(simulate_buy_day(inst, sample_buy_day(dist, rng)));
}

inline std::string_view algorithm_name(SkiAlgorithm a) {
    switch (a) {
        case SkiAlgorithm::BreakEven: return "break_even";
        case SkiAlgorithm::KarlinClassic: return "karlin";
        case SkiAlgorithm::NaiveConsistent: return "naive";
        case SkiAlgorithm::DeterministicLambda: return "deterministic";
        case SkiAlgorithm::RandomizedLambda: return "randomized";
    }
    return "?";
}

}  // namespace augur::ski

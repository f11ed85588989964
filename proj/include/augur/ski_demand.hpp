#pragma once

#include "augur/ski_rental.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace augur::ski {

/// Rent-or-buy with per-day demand: day i needs x_i machines, each rentable
/// for 1 per day or buyable for b forever. y_i is the predicted demand.
class DemandInstance {
public:
    DemandInstance(std::int64_t buy_cost, std::vector<std::int64_t> demand, std::vector<double> predicted)
        : buy_cost_(buy_cost), demand_(std::move(demand)), predicted_(std::move(predicted)) {
        require(buy_cost >= 2, "demand instance: buy cost b must be >= 2");
        require(!demand_.empty(), "demand instance: horizon must be >= 1 day");
        require(demand_.size() == predicted_.size(), "demand instance: demand and prediction lengths differ");
        for (auto d : demand_) require(d >= 0, "demand instance: demand must be >= 0");
        for (double p : predicted_)
            require(std::isfinite(p) && p >= 0.0, "demand instance: predictions must be finite and >= 0");
        require(max_demand() >= 1, "demand instance: maximum demand must be >= 1");
    }

    std::int64_t buy_cost() const { return buy_cost_; }
    const std::vector<std::int64_t>& demand() const { return demand_; }
    const std::vector<double>& predicted() const { return predicted_; }
    std::size_t horizon() const { return demand_.size(); }

    std::int64_t max_demand() const { return *std::max_element(demand_.begin(), demand_.end()); }

    /// Total L1 error sum_i |x_i - y_i|.
    double error() const {
        double eta = 0.0;
        for (std::size_t i = 0; i < demand_.size(); ++i)
            eta += std::abs(static_cast<double>(demand_[i]) - predicted_[i]);
        return eta;
    }

private:
    std::int64_t buy_cost_;
    std::vector<std::int64_t> demand_;
    std::vector<double> predicted_;
};

/// The j-th unit of demand viewed as a classical instance. Its active days
/// are renumbered 1..active_days.size() so the classical algorithm sees a
/// contiguous season.
struct DemandLevel {
    std::int64_t level = 1;
    std::vector<std::size_t> active_days;  // 0-based day indices with x_i >= level
    std::int64_t predicted_days = 0;       // #{i : y_i >= level}

    std::int64_t days() const { return static_cast<std::int64_t>(active_days.size()); }

    SkiInstance as_instance(std::int64_t buy_cost) const {
        return SkiInstance(buy_cost, days(), static_cast<double>(predicted_days));
    }
};

/// Threshold decomposition into max_i x_i classical instances.
inline std::vector<DemandLevel> decompose(const DemandInstance& inst) {
    const auto top = inst.max_demand();
    std::vector<DemandLevel> levels;
    levels.reserve(static_cast<std::size_t>(top));
    for (std::int64_t j = 1; j <= top; ++j) {
        DemandLevel lvl;
        lvl.level = j;
        for (std::size_t i = 0; i < inst.horizon(); ++i) {
            if (inst.demand()[i] >= j) lvl.active_days.push_back(i);
            if (inst.predicted()[i] >= static_cast<double>(j)) ++lvl.predicted_days;
        }
        levels.push_back(std::move(lvl));
    }
    return levels;
}

/// Offline optimum: each level independently pays min(b, active days).
inline std::int64_t demand_opt(const DemandInstance& inst) {
    std::int64_t total = 0;
    for (const auto& lvl : decompose(inst)) total += std::min(inst.buy_cost(), lvl.days());
    return total;
}

namespace detail {

inline void require_lambda_policy(const SkiPolicy& policy) {
    require(policy.algorithm == SkiAlgorithm::DeterministicLambda ||
                policy.algorithm == SkiAlgorithm::RandomizedLambda,
            "demand variant: policy must be deterministic or randomized lambda");
}

}  // namespace detail

/// One realization of the per-level algorithm; randomized policies draw an
/// independent buy day per level from `rng`.
inline double demand_algorithm_cost(const DemandInstance& inst, const SkiPolicy& policy, Rng& rng) {
    detail::require_lambda_policy(policy);
    double total = 0.0;
    for (const auto& lvl : decompose(inst))
        total += policy_sampled_cost(lvl.as_instance(inst.buy_cost()), policy, rng);
    return total;
}

/// Exact expectation of demand_algorithm_cost.
inline double demand_expected_cost(const DemandInstance& inst, const SkiPolicy& policy) {
    detail::require_lambda_policy(policy);
    double total = 0.0;
    for (const auto& lvl : decompose(inst)) total += policy_expected_cost(lvl.as_instance(inst.buy_cost()), policy);
    return total;
}

/// Sum over levels of |level predicted days - level actual days|.
inline double level_error(const DemandInstance& inst) {
    double total = 0.0;
    for (const auto& lvl : decompose(inst))
        total += std::abs(static_cast<double>(lvl.predicted_days - lvl.days()));
    return total;
}

}  // namespace augur::ski

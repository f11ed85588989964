#pragma once

#include "augur/bounds.hpp"
#include "augur/common.hpp"
#include "augur/scheduling.hpp"
#include "augur/ski_demand.hpp"
#include "augur/ski_rental.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace augur::verify {

enum class Density { Tiny, Default, Full };

struct GridSpec {
    std::int64_t ski_b_max = 50;
    std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t sched_instances = 10000;
    std::size_t sched_max_n = 8;
    std::size_t demand_max_horizon = 6;
    std::int64_t demand_max_level = 3;
    std::vector<std::int64_t> demand_b = {2, 3, 5};
    bounds::AuxiliaryGrid auxiliary{};
    std::uint64_t seed = 20180611;
    double tolerance = 1e-9;

    static GridSpec for_density(Density d) {
        GridSpec g;
        switch (d) {
            case Density::Tiny:
                g.ski_b_max = 10;
                g.sched_instances = 300;
                g.demand_max_horizon = 3;
                g.auxiliary.x_step = 1e-2;
                g.auxiliary.b_max = 100;
                break;
            case Density::Default: break;
            case Density::Full:
                g.ski_b_max = 80;
                g.sched_instances = 100000;
                break;
        }
        return g;
    }
};

/// Outcome of checking one inequality family; slack = observed - bound.
struct FamilyReport {
    std::string family;
    std::size_t points = 0;
    std::size_t violations = 0;
    double max_slack = -std::numeric_limits<double>::infinity();
    std::string worst_point;

    void add(double observed, double bound, double tolerance, const std::string& where = {}) {
        ++points;
        const double slack = observed - bound;
        if (!(observed <= bound + tolerance)) ++violations;
        if (slack > max_slack || points == 1) {
            max_slack = slack;
            worst_point = where;
        }
    }
};

namespace detail {

template <typename... Parts>
std::string describe(const Parts&... parts) {
    std::ostringstream os;
    ((os << parts), ...);
    return os.str();
}

}  // namespace detail

/// Naive, deterministic and randomized ski rental over b in 2..b_max,
/// x in 1..4b, y in 0..4b.
inline std::vector<FamilyReport> check_ski(const GridSpec& g) {
    FamilyReport naive{"ski_naive"}, det{"ski_deterministic"}, rnd{"ski_randomized"};
    for (std::int64_t b = 2; b <= g.ski_b_max; ++b) {
        for (std::int64_t x = 1; x <= 4 * b; ++x) {
            for (std::int64_t y = 0; y <= 4 * b; ++y) {
                const ski::SkiInstance inst(b, x, static_cast<double>(y));
                const double opt = static_cast<double>(ski::ski_opt(inst));
                const double eta = inst.error();
                const double naive_cost = static_cast<double>(ski::simulate_buy_day(inst, ski::naive_buy_day(inst)));
                naive.add(naive_cost, opt + eta, g.tolerance, detail::describe("b=", b, " x=", x, " y=", y));
            }
        }
        for (double lambda : g.lambdas) {
            const bool rand_ok = lambda > 1.0 / static_cast<double>(b);
            for (std::int64_t x = 1; x <= 4 * b; ++x) {
                // the randomized expectation depends on y only through y >= b
                double rand_cost[2] = {0.0, 0.0};
                if (rand_ok) {
                    rand_cost[0] = ski::randomized_expected_cost(ski::SkiInstance(b, x, 0.0), lambda);
                    rand_cost[1] = ski::randomized_expected_cost(ski::SkiInstance(b, x, static_cast<double>(b)), lambda);
                }
                for (std::int64_t y = 0; y <= 4 * b; ++y) {
                    const ski::SkiInstance inst(b, x, static_cast<double>(y));
                    const double opt = static_cast<double>(ski::ski_opt(inst));
                    const double eta = inst.error();
                    const auto where = detail::describe("b=", b, " x=", x, " y=", y, " lambda=", lambda);
                    const double det_cost =
                        static_cast<double>(ski::simulate_buy_day(inst, ski::deterministic_buy_day(inst, lambda)));
                    det.add(det_cost / opt, bounds::det_ski_bound(b, lambda, eta, opt), g.tolerance, where);
                    if (rand_ok) {
                        const double cost = rand_cost[inst.predicts_long_season() ? 1 : 0];
                        rnd.add(cost / opt, bounds::rand_ski_bound(b, lambda, eta, opt), g.tolerance, where);
                    }
                }
            }
        }
    }
    return {naive, det, rnd};
}

/// Demand vectors over {0..max_level}^T with max >= 1, every T <= max horizon.
inline std::vector<std::vector<std::int64_t>> demand_vectors(std::size_t horizon, std::int64_t max_level) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> v(horizon, 0);
    while (true) {
        if (*std::max_element(v.begin(), v.end()) >= 1) out.push_back(v);
        std::size_t i = 0;
        while (i < horizon && v[i] == max_level) v[i++] = 0;
        if (i == horizon) break;
        ++v[i];
    }
    return out;
}

/// Per-instance deterministic / randomized bounds for the varying-demand
/// variant. Short horizons are paired with every prediction vector; longer
/// ones with a structured set plus random predictions.
inline std::vector<FamilyReport> check_demand(const GridSpec& g) {
    FamilyReport det{"demand_deterministic"}, rnd{"demand_randomized"};
    Rng rng(derive_seed(g.seed, {11}));
    std::uniform_int_distribution<std::int64_t> level(0, g.demand_max_level);
    for (std::size_t t = 1; t <= g.demand_max_horizon; ++t) {
        const auto xs = demand_vectors(t, g.demand_max_level);
        for (const auto& x : xs) {
            std::vector<std::vector<std::int64_t>> ys;
            if (t <= 3) {
                ys = demand_vectors(t, g.demand_max_level);
                ys.emplace_back(t, 0);
            } else {
                auto shifted = [&](std::int64_t d) {
                    std::vector<std::int64_t> y(x);
                    for (auto& v : y) v = std::clamp<std::int64_t>(v + d, 0, g.demand_max_level);
                    return y;
                };
                ys = {x, shifted(1), shifted(-1), std::vector<std::int64_t>(t, 0),
                      std::vector<std::int64_t>(t, g.demand_max_level), std::vector<std::int64_t>(x.rbegin(), x.rend())};
                for (int r = 0; r < 8; ++r) {
                    std::vector<std::int64_t> y(t);
                    for (auto& v : y) v = level(rng);
                    ys.push_back(std::move(y));
                }
            }
            for (const auto& y : ys) {
                const std::vector<double> yd(y.begin(), y.end());
                for (auto b : g.demand_b) {
                    const ski::DemandInstance inst(b, x, yd);
                    const double opt = static_cast<double>(ski::demand_opt(inst));
                    const double eta = inst.error();
                    for (double lambda : g.lambdas) {
                        const double dc = ski::demand_expected_cost(inst, ski::SkiPolicy::deterministic(lambda));
                        det.add(dc / opt, bounds::det_ski_bound(b, lambda, eta, opt), g.tolerance);
                        if (lambda > 1.0 / static_cast<double>(b)) {
                            const double rc = ski::demand_expected_cost(inst, ski::SkiPolicy::randomized(lambda));
                            rnd.add(rc / opt, bounds::rand_ski_bound(b, lambda, eta, opt), g.tolerance);
                        }
                    }
                }
            }
        }
    }
    return {det, rnd};
}

/// Random job sets: n in 1..max_n, x uniform on [1, 10], predictions from a
/// mix of exact, Gaussian-perturbed, uniform, permuted and rounded values.
inline sched::JobSet random_job_set(Rng& rng, std::size_t max_n) {
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::uniform_real_distribution<double> len(1.0, 10.0);
    std::uniform_int_distribution<int> mode(0, 4);
    const auto n = size(rng);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = len(rng);
    switch (mode(rng)) {
        case 0: y = x; break;
        case 1: {
            const double sigmas[] = {0.5, 2.0, 5.0};
            std::normal_distribution<double> z(0.0, sigmas[std::uniform_int_distribution<int>(0, 2)(rng)]);
            for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + z(rng);
            break;
        }
        case 2: {
            std::uniform_real_distribution<double> u(-5.0, 20.0);
            for (auto& v : y) v = u(rng);
            break;
        }
        case 3:
            y = x;
            std::shuffle(y.begin(), y.end(), rng);
            break;
        default:
            for (std::size_t j = 0; j < n; ++j) y[j] = std::round(x[j]);
            break;
    }
    return sched::JobSet::from_lengths(x, y);
}

inline std::vector<FamilyReport> check_scheduling(const GridSpec& g) {
    FamilyReport spjf{"sched_spjf"}, prr{"sched_prr"}, perfect{"sched_prr_perfect"}, rr{"sched_round_robin"};
    Rng rng(derive_seed(g.seed, {12}));
    for (std::size_t k = 0; k < g.sched_instances; ++k) {
        const auto jobs = random_job_set(rng, g.sched_max_n);
        const auto n = static_cast<std::int64_t>(jobs.size());
        const double opt = sched::sjf_opt(jobs).objective;
        const double eta = sched::prediction_error(jobs);
        const auto where = detail::describe("instance=", k, " n=", n, " eta=", eta);
        rr.add(sched::round_robin(jobs).objective / opt, bounds::kRoundRobinRatio, g.tolerance, where);
        spjf.add(sched::spjf(jobs).objective / opt, bounds::spjf_bound(n, eta), g.tolerance, where);

        std::vector<double> x(jobs.size());
        for (std::size_t j = 0; j < jobs.size(); ++j) x[j] = jobs[j].length;
        const auto exact = sched::JobSet::perfectly_predicted(x);
        for (double lambda : g.lambdas) {
            prr.add(sched::prr(jobs, lambda).objective / opt, bounds::prr_bound(n, eta, lambda), g.tolerance, where);
            perfect.add(sched::prr(exact, lambda).objective / opt, bounds::prr_perfect_bound(lambda), g.tolerance,
                        where);
        }
    }
    return {rr, spjf, prr, perfect};
}

/// Folds per-point reports into one family per bound name.
inline std::vector<FamilyReport> check_auxiliary(const GridSpec& g) {
    std::map<std::string, FamilyReport> by_name;
    std::vector<std::string> order;
    for (const auto& r : bounds::check_auxiliary_inequalities(g.auxiliary)) {
        auto [it, inserted] = by_name.try_emplace(r.bound_name, FamilyReport{r.bound_name});
        if (inserted) order.push_back(r.bound_name);
        std::string where;
        if (r.parameters.x) where = detail::describe("x=", *r.parameters.x);
        if (r.parameters.b) where = detail::describe("b=", *r.parameters.b, " lambda=", *r.parameters.lambda);
        it->second.add(r.observed_ratio, r.bound_value, r.tolerance, where);
    }
    std::vector<FamilyReport> out;
    for (const auto& name : order) out.push_back(by_name[name]);
    return out;
}

inline std::vector<FamilyReport> verify_all(const GridSpec& g) {
    std::vector<FamilyReport> out;
    for (auto part : {check_ski(g), check_demand(g), check_scheduling(g), check_auxiliary(g)})
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

inline std::size_t total_violations(const std::vector<FamilyReport>& reports) {
    std::size_t v = 0;
    for (const auto& r : reports) v += r.violations;
    return v;
}

}  // namespace augur::verify

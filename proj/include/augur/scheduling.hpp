#pragma once

#include "augur/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace augur::sched {

struct Job {
    std::int64_t id = 0;
    double length = 1.0;     // true processing time x_j, hidden from non-clairvoyant policies
    double predicted = 1.0;  // predicted processing time y_j, may be <= 0 after noise
};

/// Jobs released together at time 0 on a single machine. Lengths are
/// normalized so the shortest is at least 1.
class JobSet {
public:
    explicit JobSet(std::vector<Job> jobs) : jobs_(std::move(jobs)) {
        require(!jobs_.empty(), "job set: need at least one job");
        for (const auto& j : jobs_) {
            require(std::isfinite(j.length) && j.length >= 1.0, "job set: every length must be >= 1");
            require(std::isfinite(j.predicted), "job set: predictions must be finite");
        }
    }

    /// Jobs with ids 1..n.
    static JobSet from_lengths(std::span<const double> lengths, std::span<const double> predicted) {
        require(lengths.size() == predicted.size(), "job set: lengths and predictions differ in size");
        std::vector<Job> jobs;
        jobs.reserve(lengths.size());
        for (std::size_t i = 0; i < lengths.size(); ++i)
            jobs.push_back({static_cast<std::int64_t>(i + 1), lengths[i], predicted[i]});
        return JobSet(std::move(jobs));
    }

    static JobSet perfectly_predicted(std::span<const double> lengths) { return from_lengths(lengths, lengths); }

    std::size_t size() const { return jobs_.size(); }
    const Job& operator[](std::size_t i) const { return jobs_[i]; }
    const std::vector<Job>& jobs() const { return jobs_; }

    double total_length() const {
        double s = 0.0;
        for (const auto& j : jobs_) s += j.length;
        return s;
    }

    /// Same predictions, different true lengths.
    JobSet with_lengths(std::span<const double> lengths) const {
        require(lengths.size() == jobs_.size(), "job set: length vector size mismatch");
        auto copy = jobs_;
        for (std::size_t i = 0; i < copy.size(); ++i) copy[i].length = lengths[i];
        return JobSet(std::move(copy));
    }

private:
    std::vector<Job> jobs_;
};

/// Total L1 prediction error sum_j |x_j - y_j|.
inline double prediction_error(const JobSet& jobs) {
    double eta = 0.0;
    for (const auto& j : jobs.jobs()) eta += std::abs(j.length - j.predicted);
    return eta;
}

/// What a non-clairvoyant policy is allowed to see about an unfinished job.
struct ActiveJob {
    std::size_t index = 0;  // position in the JobSet
    std::int64_t id = 0;
    double predicted = 0.0;
    double attained = 0.0;  // work received so far
};

/// Maps the active set to per-job rates (same order as `active`). Rates must
/// be non-negative and sum to at most 1; they are held constant until the
/// next completion.
using RateSchedule = std::function<void(std::span<const ActiveJob> active, std::span<double> rates)>;

enum class TieBreak { IdAscending, IdDescending };

/// An interval between two consecutive completion events.
struct ScheduleEvent {
    double start = 0.0;
    double end = 0.0;
    std::vector<std::pair<std::size_t, double>> rates;  // (job index, rate)
    std::vector<std::size_t> completed;
};

struct ScheduleResult {
    std::vector<double> completion;     // indexed like the JobSet
    std::vector<double> executed_work;  // indexed like the JobSet
    double objective = 0.0;             // sum of completion times
    std::vector<ScheduleEvent> events;  // filled when tracing
};

struct ExecutorOptions {
    bool record_events = false;
};

namespace detail {

inline constexpr double kRemainingEpsilon = 1e-12;  // relative to the original length
inline constexpr double kRateSlack = 1e-12;

inline double sum_completions(const std::vector<double>& completion) {
    double s = 0.0;
    for (double c : completion) s += c;
    return s;
}

// Index into `active` of the job with the smallest prediction.
inline std::size_t current_job(std::span<const ActiveJob> active, TieBreak tie) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < active.size(); ++i) {
        const auto& a = active[i];
        const auto& c = active[best];
        if (a.predicted < c.predicted) {
            best = i;
        } else if (a.predicted == c.predicted) {
            const bool wins = tie == TieBreak::IdAscending ? a.id < c.id : a.id > c.id;
            if (wins) best = i;
        }
    }
    return best;
}

}  // namespace detail

/// Event-driven execution of a rate policy. Between completions every rate
/// is constant, so the next event is min_j remaining_j / rate_j.
inline ScheduleResult run_rate_schedule(const JobSet& jobs, const RateSchedule& policy,
                                        ExecutorOptions options = {}) {
    const std::size_t n = jobs.size();
    std::vector<double> remaining(n), attained(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = jobs[i].length;

    ScheduleResult result;
    result.completion.assign(n, 0.0);
    result.executed_work.assign(n, 0.0);

    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});
    std::vector<ActiveJob> view;
    std::vector<double> rates;
    double now = 0.0;

    while (!active.empty()) {
        view.clear();
        for (auto i : active) view.push_back({i, jobs[i].id, jobs[i].predicted, attained[i]});
        rates.assign(active.size(), 0.0);
        policy(std::span<const ActiveJob>(view), std::span<double>(rates));

        double total_rate = 0.0;
        for (double r : rates) {
            if (!(std::isfinite(r) && r >= 0.0)) throw InvalidArgument("rate policy produced a negative or non-finite rate");
            total_rate += r;
        }
        if (total_rate > 1.0 + detail::kRateSlack) throw InvalidArgument("rate policy rates sum to more than 1");
        if (total_rate <= 0.0) throw Livelock("rate policy assigned zero total rate while jobs remain");

        double dt = std::numeric_limits<double>::infinity();
        std::size_t first = 0;
        for (std::size_t a = 0; a < active.size(); ++a) {
            if (rates[a] <= 0.0) continue;
            const double t = remaining[active[a]] / rates[a];
            if (t < dt) {
                dt = t;
                first = a;
            }
        }

        ScheduleEvent event;
        if (options.record_events) {
            event.start = now;
            for (std::size_t a = 0; a < active.size(); ++a) event.rates.emplace_back(active[a], rates[a]);
        }

        const double end = now + dt;
        std::vector<std::size_t> still_active;
        still_active.reserve(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            const auto i = active[a];
            const double work = rates[a] * dt;
            remaining[i] -= work;
            attained[i] += work;
            result.executed_work[i] += work;
            if (a == first || remaining[i] <= detail::kRemainingEpsilon * jobs[i].length) {
                remaining[i] = 0.0;
                result.completion[i] = end;
                if (options.record_events) event.completed.push_back(i);
            } else {
                still_active.push_back(i);
            }
        }
        if (options.record_events) {
            event.end = end;
            result.events.push_back(std::move(event));
        }
        active = std::move(still_active);
        now = end;
    }
    result.objective = detail::sum_completions(result.completion);
    return result;
}

/// Equal share 1/k to each of the k active jobs.
inline RateSchedule round_robin_policy() {
    return [](std::span<const ActiveJob> active, std::span<double> rates) {
        const double share = 1.0 / static_cast<double>(active.size());
        std::fill(rates.begin(), rates.end(), share);
    };
}

/// Full machine to the active job with the smallest prediction.
inline RateSchedule spjf_policy(TieBreak tie = TieBreak::IdAscending) {
    return [tie](std::span<const ActiveJob> active, std::span<double> rates) {
        std::fill(rates.begin(), rates.end(), 0.0);
        rates[detail::current_job(active, tie)] = 1.0;
    };
}

/// (1-lambda)/k to every active job plus lambda to the current one.
inline RateSchedule prr_policy(double lambda, TieBreak tie = TieBreak::IdAscending) {
    require(lambda > 0.0 && lambda < 1.0, "preferential round-robin: lambda must lie in (0, 1)");
    return [lambda, tie](std::span<const ActiveJob> active, std::span<double> rates) {
        const double share = (1.0 - lambda) / static_cast<double>(active.size());
        std::fill(rates.begin(), rates.end(), share);
        rates[detail::current_job(active, tie)] += lambda;
    };
}

/// Runs `a` at rate lambda and `b` at rate 1-lambda on the same state.
inline RateSchedule combine_policies(RateSchedule a, RateSchedule b, double lambda) {
    require(lambda > 0.0 && lambda < 1.0, "combine: lambda must lie in (0, 1)");
    return [a = std::move(a), b = std::move(b), lambda](std::span<const ActiveJob> active, std::span<double> rates) {
        std::vector<double> ra(rates.size(), 0.0), rb(rates.size(), 0.0);
        a(active, ra);
        b(active, rb);
        for (std::size_t i = 0; i < rates.size(); ++i) rates[i] = lambda * ra[i] + (1.0 - lambda) * rb[i];
    };
}

/// Clairvoyant optimum: shortest job first, ties by id.
inline ScheduleResult sjf_opt(const JobSet& jobs) {
    std::vector<std::size_t> order(jobs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        if (jobs[l].length != jobs[r].length) return jobs[l].length < jobs[r].length;
        return jobs[l].id < jobs[r].id;
    });
    ScheduleResult result;
    result.completion.assign(jobs.size(), 0.0);
    result.executed_work.assign(jobs.size(), 0.0);
    double now = 0.0;
    for (auto i : order) {
        now += jobs[i].length;
        result.completion[i] = now;
        result.executed_work[i] = jobs[i].length;
    }
    result.objective = detail::sum_completions(result.completion);
    return result;
}

inline ScheduleResult round_robin(const JobSet& jobs, ExecutorOptions options = {}) {
    return run_rate_schedule(jobs, round_robin_policy(), options);
}

inline ScheduleResult spjf(const JobSet& jobs, TieBreak tie = TieBreak::IdAscending, ExecutorOptions options = {}) {
    return run_rate_schedule(jobs, spjf_policy(tie), options);
}

inline ScheduleResult combine(const JobSet& jobs, RateSchedule a, RateSchedule b, double lambda,
                              ExecutorOptions options = {}) {
    return run_rate_schedule(jobs, combine_policies(std::move(a), std::move(b), lambda), options);
}

inline ScheduleResult prr(const JobSet& jobs, double lambda, TieBreak tie = TieBreak::IdAscending,
                          ExecutorOptions options = {}) {
    return run_rate_schedule(jobs, prr_policy(lambda, tie), options);
}

inline double competitive_ratio(const ScheduleResult& alg, const ScheduleResult& opt) {
    return alg.objective / opt.objective;
}

}  // namespace augur::sched

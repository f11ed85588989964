#pragma once

#include "augur/bounds.hpp"
#include "augur/common.hpp"
#include "augur/scheduling.hpp"
#include "augur/ski_rental.hpp"
#include "augur/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace augur::experiments {

inline constexpr std::uint64_t kDefaultSeed = 20180611;

/// One executed trial.
struct TrialOutcome {
    double alg_cost = 0.0;
    double opt_cost = 0.0;
    double ratio = 0.0;
    double eta = 0.0;
};

/// Aggregate over all trials of one (sigma, algorithm) grid point. The
/// average competitive ratio is the mean of per-trial ratios.
struct TrialReport {
    std::string experiment;
    std::string algorithm;
    double lambda = 0.0;
    double sigma = 0.0;
    std::size_t trials = 0;
    double mean_ratio = 0.0;
    double mean_eta = 0.0;
    double max_ratio = 0.0;
    std::vector<TrialOutcome> outcomes;  // kept only when requested
};

inline std::vector<double> linear_grid(double start, double stop, double step) {
    require(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step), "grid: values must be finite");
    require(step > 0.0, "grid: step must be > 0");
    require(stop >= start, "grid: stop must be >= start");
    std::vector<double> out;
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
    for (std::int64_t i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    // land exactly on stop when the step divides the range
    if (std::abs(out.back() - stop) <= 1e-9 * std::max(1.0, std::abs(stop))) out.back() = stop;
    return out;
}

inline void validate_sigma_grid(const std::vector<double>& sigmas) {
    require(!sigmas.empty(), "sigma grid must not be empty");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        require(std::isfinite(sigmas[i]) && sigmas[i] >= 0.0, "sigma grid values must be >= 0");
        if (i > 0) require(sigmas[i] > sigmas[i - 1], "sigma grid must be strictly ascending");
    }
}

/// Runs fn(i) for i in [0, count) on `threads` workers. Each index is handled
/// exactly once, so callers writing to slot i produce order-independent output.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
}

inline TrialReport aggregate(std::string experiment, std::string algorithm, double lambda, double sigma,
                             std::vector<TrialOutcome> outcomes, bool keep) {
    TrialReport r;
    r.experiment = std::move(experiment);
    r.algorithm = std::move(algorithm);
    r.lambda = lambda;
    r.sigma = sigma;
    r.trials = outcomes.size();
    double ratio_sum = 0.0, eta_sum = 0.0, max_ratio = 0.0;
    for (const auto& o : outcomes) {
        ratio_sum += o.ratio;
        eta_sum += o.eta;
        max_ratio = std::max(max_ratio, o.ratio);
    }
    const auto n = static_cast<double>(std::max<std::size_t>(outcomes.size(), 1));
    r.mean_ratio = ratio_sum / n;
    r.mean_eta = eta_sum / n;
    r.max_ratio = max_ratio;
    if (keep) r.outcomes = std::move(outcomes);
    return r;
}

// --- ski rental sweep -----------------------------------------------------

struct SkiSweepConfig {
    std::int64_t b = 100;
    std::size_t trials = 10000;
    std::vector<double> sigmas;  // empty: 0 to 4b in steps of b/10
    double lambda_det = 0.5;
    double lambda_rand = std::log(1.5);
    std::uint64_t seed = kDefaultSeed;
    bool sampled = false;        // score randomized algorithms by one draw instead of the expectation
    unsigned threads = 1;
    bool keep_outcomes = false;

    std::vector<double> sigma_grid() const {
        if (!sigmas.empty()) return sigmas;
        const double bd = static_cast<double>(b);
        return linear_grid(0.0, 4.0 * bd, bd / 10.0);
    }
};

struct SkiAlgorithmSpec {
    std::string label;
    ski::SkiPolicy policy;
};

inline std::vector<SkiAlgorithmSpec> ski_sweep_algorithms(const SkiSweepConfig& cfg) {
    const std::string suffix = cfg.sampled ? "_sampled" : "_expected";
    return {
        {"break_even", ski::SkiPolicy::break_even()},
        {"karlin" + suffix, ski::SkiPolicy::karlin()},
        {"deterministic", ski::SkiPolicy::deterministic(cfg.lambda_det)},
        {"randomized" + suffix, ski::SkiPolicy::randomized(cfg.lambda_rand)},
    };
}

inline void validate(const SkiSweepConfig& cfg) {
    require(cfg.b >= 2, "ski sweep: b must be >= 2");
    require(cfg.trials >= 1, "ski sweep: trials must be >= 1");
    ski::validate_deterministic_lambda(cfg.lambda_det);
    ski::validate_randomized_lambda(cfg.lambda_rand, cfg.b);
    validate_sigma_grid(cfg.sigma_grid());
}

namespace detail {
inline constexpr std::uint64_t kSkiInstanceStream = 1;
inline constexpr std::uint64_t kSkiBuyStream = 2;
inline constexpr std::uint64_t kJobStream = 3;
inline constexpr std::uint64_t kJobNoiseStream = 4;
}  // namespace detail

/// Rows are ordered by sigma, then by algorithm. Trial i draws the same x
/// and standard-normal noise at every sigma.
inline std::vector<TrialReport> run_ski_sweep(const SkiSweepConfig& cfg) {
    validate(cfg);
    const auto sigmas = cfg.sigma_grid();
    const auto algos = ski_sweep_algorithms(cfg);

    std::vector<std::int64_t> days(cfg.trials);
    std::vector<double> noise(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        Rng rng(derive_seed(cfg.seed, {detail::kSkiInstanceStream, i}));
        days[i] = workloads::gen_ski_days(cfg.b, rng);
        noise[i] = workloads::standard_normal(rng);
    });

    std::vector<TrialReport> rows;
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        std::vector<std::vector<TrialOutcome>> per_algo(algos.size(), std::vector<TrialOutcome>(cfg.trials));
        parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
            const double y = workloads::clamp_ski_prediction(static_cast<double>(days[i]) + sigmas[s] * noise[i]);
            const ski::SkiInstance inst(cfg.b, days[i], y);
            const double opt = static_cast<double>(ski::ski_opt(inst));
            for (std::size_t a = 0; a < algos.size(); ++a) {
                double cost;
                if (cfg.sampled && algos[a].policy.is_randomized()) {
                    Rng rng(derive_seed(cfg.seed, {detail::kSkiBuyStream, s, i, a}));
                    cost = ski::policy_sampled_cost(inst, algos[a].policy, rng);
                } else {
                    cost = ski::policy_expected_cost(inst, algos[a].policy);
                }
                per_algo[a][i] = {cost, opt, cost / opt, inst.error()};
            }
        });
        for (std::size_t a = 0; a < algos.size(); ++a)
            rows.push_back(aggregate("ski_sweep", algos[a].label, algos[a].policy.lambda, sigmas[s],
                                     std::move(per_algo[a]), cfg.keep_outcomes));
    }
    return rows;
}

// --- scheduling sweep -----------------------------------------------------

struct SchedSweepConfig {
    std::size_t n = 50;
    workloads::ParetoKind kind = workloads::ParetoKind::Lomax;
    double alpha = 1.1;
    double scale = 1000.0;
    std::size_t trials = 1000;
    std::vector<double> sigmas;  // empty: 0 to 2x the Pareto mean in 10 steps
    double lambda = 0.5;
    std::uint64_t seed = kDefaultSeed;
    bool fixed_jobs = false;     // draw one job set and resample only the noise
    unsigned threads = 1;
    bool keep_outcomes = false;

    workloads::ParetoJobModel job_model() const { return {kind, alpha, scale, n, seed}; }

    std::vector<double> sigma_grid() const {
        if (!sigmas.empty()) return sigmas;
        const double mean = job_model().mean();
        return linear_grid(0.0, 2.0 * mean, mean / 5.0);
    }
};

inline void validate(const SchedSweepConfig& cfg) {
    require(cfg.n >= 1, "scheduling sweep: n must be >= 1");
    require(cfg.trials >= 1, "scheduling sweep: trials must be >= 1");
    require(cfg.lambda > 0.0 && cfg.lambda < 1.0, "scheduling sweep: lambda must lie in (0, 1)");
    workloads::validate(cfg.job_model());
    validate_sigma_grid(cfg.sigma_grid());
}

/// Labels and the lambda column: round-robin is the lambda -> 0 end of the
/// preferential family and SPJF the lambda -> 1 end.
inline std::vector<std::pair<std::string, double>> sched_sweep_algorithms(const SchedSweepConfig& cfg) {
    return {{"round_robin", 0.0}, {"spjf", 1.0}, {"prr", cfg.lambda}};
}

inline std::vector<TrialReport> run_scheduling_sweep(const SchedSweepConfig& cfg) {
    validate(cfg);
    const auto sigmas = cfg.sigma_grid();
    const auto algos = sched_sweep_algorithms(cfg);
    const auto model = cfg.job_model();

    // outcomes[s][a][i]
    std::vector<std::vector<std::vector<TrialOutcome>>> outcomes(
        sigmas.size(), std::vector<std::vector<TrialOutcome>>(algos.size(), std::vector<TrialOutcome>(cfg.trials)));

    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        Rng job_rng(derive_seed(cfg.seed, {detail::kJobStream, cfg.fixed_jobs ? 0 : i}));
        const auto lengths = workloads::gen_pareto_lengths(model, job_rng);
        Rng noise_rng(derive_seed(cfg.seed, {detail::kJobNoiseStream, i}));
        std::vector<double> z(lengths.size());
        for (auto& v : z) v = workloads::standard_normal(noise_rng);

        const auto truth = sched::JobSet::perfectly_predicted(lengths);
        const double opt = sched::sjf_opt(truth).objective;
        const double rr = sched::round_robin(truth).objective;

        std::vector<double> predicted(lengths.size());
        for (std::size_t s = 0; s < sigmas.size(); ++s) {
            for (std::size_t j = 0; j < lengths.size(); ++j) predicted[j] = lengths[j] + sigmas[s] * z[j];
            const auto jobs = sched::JobSet::from_lengths(lengths, predicted);
            const double eta = sched::prediction_error(jobs);
            const double costs[3] = {rr, sched::spjf(jobs).objective, sched::prr(jobs, cfg.lambda).objective};
            for (std::size_t a = 0; a < algos.size(); ++a) outcomes[s][a][i] = {costs[a], opt, costs[a] / opt, eta};
        }
    });

    std::vector<TrialReport> rows;
    for (std::size_t s = 0; s < sigmas.size(); ++s)
        for (std::size_t a = 0; a < algos.size(); ++a)
            rows.push_back(aggregate("sched_sweep", algos[a].first, algos[a].second, sigmas[s],
                                     std::move(outcomes[s][a]), cfg.keep_outcomes));
    return rows;
}

// --- robustness / consistency trade-off ----------------------------------

struct TradeoffRow {
    double lambda = 0.0;
    double det_robustness = 0.0;
    double det_consistency = 0.0;
    double rand_robustness = std::numeric_limits<double>::quiet_NaN();
    double rand_consistency = std::numeric_limits<double>::quiet_NaN();
};

/// Closed-form guarantees per lambda. Randomized entries are NaN where
/// lambda <= 1/b.
inline std::vector<TradeoffRow> run_tradeoff_curve(std::int64_t b, const std::vector<double>& lambdas) {
    require(b >= 2, "trade-off curve: b must be >= 2");
    std::vector<TradeoffRow> rows;
    for (double l : lambdas) {
        ski::validate_deterministic_lambda(l);
        TradeoffRow r;
        r.lambda = l;
        r.det_robustness = bounds::det_ski_robustness(l);
        r.det_consistency = bounds::det_ski_consistency(l);
        if (l > 1.0 / static_cast<double>(b)) {
            r.rand_robustness = bounds::rand_ski_robustness(b, l);
            r.rand_consistency = bounds::rand_ski_consistency(l);
        }
        rows.push_back(r);
    }
    return rows;
}

struct DominanceRow {
    double det_lambda = 0.0;
    double det_robustness = 0.0;
    double det_consistency = 0.0;
    bool found = false;  // some randomized lambda is at least as robust
    double rand_lambda = 0.0;
    double rand_robustness = 0.0;
    double rand_consistency = 0.0;

    bool strictly_better() const { return found && rand_consistency < det_consistency; }
};

/// For each deterministic lambda, the randomized lambda with the best
/// consistency among those whose robustness is no worse.
inline std::vector<DominanceRow> randomized_dominance(std::int64_t b, const std::vector<double>& det_lambdas,
                                                      const std::vector<double>& rand_lambdas) {
    std::vector<DominanceRow> out;
    for (double ld : det_lambdas) {
        ski::validate_deterministic_lambda(ld);
        DominanceRow row;
        row.det_lambda = ld;
        row.det_robustness = bounds::det_ski_robustness(ld);
        row.det_consistency = bounds::det_ski_consistency(ld);
        for (double lr : rand_lambdas) {
            ski::validate_randomized_lambda(lr, b);
            const double rob = bounds::rand_ski_robustness(b, lr);
            const double con = bounds::rand_ski_consistency(lr);
            if (rob <= row.det_robustness && (!row.found || con < row.rand_consistency)) {
                row.found = true;
                row.rand_lambda = lr;
                row.rand_robustness = rob;
                row.rand_consistency = con;
            }
        }
        out.push_back(row);
    }
    return out;
}

// --- output ---------------------------------------------------------------

inline std::string fixed(double v, int decimals) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline constexpr const char* kSweepCsvHeader = "experiment,algorithm,lambda,sigma,trials,mean_ratio,mean_eta,max_ratio";

inline void write_sweep_csv(std::ostream& os, const std::vector<TrialReport>& rows) {
    os << kSweepCsvHeader << '\n';
    for (const auto& r : rows)
        os << csv_field(r.experiment) << ',' << csv_field(r.algorithm) << ',' << fixed(r.lambda, 6) << ','
           << fixed(r.sigma, 4) << ',' << r.trials << ',' << fixed(r.mean_ratio, 6) << ',' << fixed(r.mean_eta, 4)
           << ',' << fixed(r.max_ratio, 6) << '\n';
}

inline std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

inline std::string json_number(double v, int decimals) { return std::isnan(v) ? "null" : fixed(v, decimals); }

/// Array of flat objects keyed like the CSV header; numbers use the same
/// fixed precision as the CSV so output stays byte-stable.
inline void write_sweep_json(std::ostream& os, const std::vector<TrialReport>& rows) {
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        os << (i ? ",\n " : "\n ") << "{\"experiment\": " << json_string(r.experiment)
           << ", \"algorithm\": " << json_string(r.algorithm) << ", \"lambda\": " << json_number(r.lambda, 6)
           << ", \"sigma\": " << json_number(r.sigma, 4) << ", \"trials\": " << r.trials
           << ", \"mean_ratio\": " << json_number(r.mean_ratio, 6) << ", \"mean_eta\": " << json_number(r.mean_eta, 4)
           << ", \"max_ratio\": " << json_number(r.max_ratio, 6) << "}";
    }
    os << (rows.empty() ? "]\n" : "\n]\n");
}

inline constexpr const char* kTradeoffCsvHeader =
    "lambda,det_robustness,det_consistency,rand_robustness,rand_consistency";

inline void write_tradeoff_csv(std::ostream& os, const std::vector<TradeoffRow>& rows) {
    os << kTradeoffCsvHeader << '\n';
    for (const auto& r : rows)
        os << fixed(r.lambda, 6) << ',' << fixed(r.det_robustness, 6) << ',' << fixed(r.det_consistency, 6) << ','
           << fixed(r.rand_robustness, 6) << ',' << fixed(r.rand_consistency, 6) << '\n';
}

inline void write_tradeoff_json(std::ostream& os, const std::vector<TradeoffRow>& rows) {
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        os << (i ? ",\n " : "\n ") << "{\"lambda\": " << json_number(r.lambda, 6)
           << ", \"det_robustness\": " << json_number(r.det_robustness, 6)
           << ", \"det_consistency\": " << json_number(r.det_consistency, 6)
           << ", \"rand_robustness\": " << json_number(r.rand_robustness, 6)
           << ", \"rand_consistency\": " << json_number(r.rand_consistency, 6) << "}";
    }
    os << (rows.empty() ? "]\n" : "\n]\n");
}

}  // namespace augur::experiments

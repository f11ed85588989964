#pragma once

#include "augur/common.hpp"
#include "augur/scheduling.hpp"
#include "augur/ski_rental.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace augur::workloads {

/// Additive Gaussian prediction noise y = x + N(0, sigma^2).
struct NoiseModel {
    double sigma = 0.0;
    std::uint64_t seed = 0;

    Rng stream() const { return Rng(seed); }
};

enum class ParetoKind {
    Lomax,    // scale * (U^{-1/alpha} - 1): Pareto type II, numpy's "pareto"
    Classic,  // scale * U^{-1/alpha}: survival (scale/t)^alpha for t >= scale
};

/// Heavy-tailed job lengths, floored at 1 so the shortest job is >= 1.
struct ParetoJobModel {
    ParetoKind kind = ParetoKind::Lomax;
    double alpha = 1.1;
    double scale = 1000.0;
    std::size_t n = 50;
    std::uint64_t seed = 0;

    /// Mean of the unfloored distribution.
    double mean() const {
        return kind == ParetoKind::Classic ? alpha * scale / (alpha - 1.0) : scale / (alpha - 1.0);
    }
    Rng stream() const { return Rng(seed); }
};

inline void validate(const NoiseModel& m) {
    require(std::isfinite(m.sigma) && m.sigma >= 0.0, "noise model: sigma must be >= 0");
}

inline void validate(const ParetoJobModel& m) {
    require(m.alpha > 1.0, "pareto model: alpha must be > 1");
    require(std::isfinite(m.scale) && m.scale > 0.0, "pareto model: scale must be > 0");
    require(m.n >= 1, "pareto model: n must be >= 1");
}

/// Skiing days drawn uniformly from {1, ..., 4b}.
inline std::int64_t gen_ski_days(std::int64_t b, Rng& rng) {
    require(b >= 2, "ski workload: b must be >= 2");
    std::uniform_int_distribution<std::int64_t> days(1, 4 * b);
    return days(rng);
}

inline double standard_normal(Rng& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    return z(rng);
}

/// x + sigma * Z. Unclamped; job predictions keep their sign.
inline double apply_noise(double true_value, const NoiseModel& model, Rng& rng) {
    validate(model);
    return true_value + model.sigma * standard_normal(rng);
}

/// Ski predictions are day counts, so negative draws become 0.
inline double clamp_ski_prediction(double y) { return std::max(0.0, y); }

inline double apply_ski_noise(std::int64_t days, const NoiseModel& model, Rng& rng) {
    return clamp_ski_prediction(apply_noise(static_cast<double>(days), model, rng));
}

/// A fresh ski instance (x uniform on {1..4b}) with a noisy prediction.
inline ski::SkiInstance gen_ski_instance(std::int64_t b, const NoiseModel& noise, Rng& rng) {
    const auto x = gen_ski_days(b, rng);
    return ski::SkiInstance(b, x, apply_ski_noise(x, noise, rng));
}

/// Inverse-CDF Pareto draw, floored at 1 (and at `scale` for the classic kind).
inline double sample_pareto(ParetoKind kind, double alpha, double scale, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = 1.0 - unit(rng);  // (0, 1]
    const double tail = std::pow(u, -1.0 / alpha);
    if (kind == ParetoKind::Classic) return std::max({scale * tail, scale, 1.0});
    return std::max(scale * (tail - 1.0), 1.0);
}

inline std::vector<double> gen_pareto_lengths(const ParetoJobModel& model, Rng& rng) {
    validate(model);
    std::vector<double> lengths(model.n);
    for (auto& x : lengths) x = sample_pareto(model.kind, model.alpha, model.scale, rng);
    return lengths;
}

/// Job set with perfect predictions; see with_noisy_predictions.
inline sched::JobSet gen_pareto_jobs(const ParetoJobModel& model, Rng& rng) {
    const auto lengths = gen_pareto_lengths(model, rng);
    return sched::JobSet::perfectly_predicted(lengths);
}

inline sched::JobSet with_noisy_predictions(const sched::JobSet& jobs, const NoiseModel& noise, Rng& rng) {
    std::vector<sched::Job> out = jobs.jobs();
    for (auto& j : out) j.predicted = apply_noise(j.length, noise, rng);
    return sched::JobSet(std::move(out));
}

}  // namespace augur::workloads

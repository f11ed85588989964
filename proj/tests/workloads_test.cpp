#include "augur/workloads.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace augur;
using namespace augur::workloads;

TEST(SkiDays, UniformOnOneToFourB) {
    Rng rng(derive_seed(1, {1}));
    const int n = 100000;
    double sum = 0.0;
    std::int64_t lo = 1000, hi = 0;
    for (int i = 0; i < n; ++i) {
        const auto x = gen_ski_days(100, rng);
        sum += static_cast<double>(x);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    EXPECT_NEAR(sum / n, 200.5, 0.01 * 200.5);
    EXPECT_EQ(lo, 1);
    EXPECT_EQ(hi, 400);
}

TEST(SkiDays, SmallB) {
    Rng rng(2);
    std::vector<int> seen(9, 0);
    for (int i = 0; i < 10000; ++i) {
        const auto x = gen_ski_days(2, rng);
        ASSERT_GE(x, 1);
        ASSERT_LE(x, 8);
        ++seen[static_cast<std::size_t>(x)];
    }
    for (int d = 1; d <= 8; ++d) EXPECT_GT(seen[static_cast<std::size_t>(d)], 0);
    EXPECT_THROW(gen_ski_days(1, rng), InvalidArgument);
}

TEST(SkiDays, SeedReproducible) {
    Rng a(77), b(77);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(gen_ski_days(100, a), gen_ski_days(100, b));
}

TEST(Noise, ZeroSigmaIsIdentity) {
    Rng rng(3);
    const NoiseModel m{0.0, 0};
    for (double x : {1.0, 17.5, 1e6}) EXPECT_EQ(apply_noise(x, m, rng), x);
}

TEST(Noise, MomentsMatch) {
    Rng rng(derive_seed(1, {2}));
    const NoiseModel m{100.0, 0};
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = apply_noise(50.0, m, rng) - 50.0;
        sum += e;
        sum2 += e * e;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum2 - n * mean * mean) / (n - 1));
    EXPECT_NEAR(sd, 100.0, 2.0);
    EXPECT_LE(std::abs(mean), 3.0 * 100.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Noise, RejectsNegativeSigma) {
    Rng rng(1);
    EXPECT_THROW(apply_noise(1.0, NoiseModel{-1.0, 0}, rng), InvalidArgument);
}

TEST(Noise, SkiPredictionsClampAtZero) {
    EXPECT_EQ(clamp_ski_prediction(1.0 - 5.0), 0.0);
    EXPECT_EQ(clamp_ski_prediction(3.5), 3.5);
    Rng rng(4);
    for (int i = 0; i < 10000; ++i) ASSERT_GE(apply_ski_noise(1, NoiseModel{50.0, 0}, rng), 0.0);
    // job predictions are not clamped
    bool negative = false;
    for (int i = 0; i < 1000; ++i) negative |= apply_noise(1.0, NoiseModel{50.0, 0}, rng) < 0.0;
    EXPECT_TRUE(negative);
}

TEST(SkiInstanceGen, CarriesNoisyPrediction) {
    Rng a(9), b(9);
    const auto inst = gen_ski_instance(100, NoiseModel{0.0, 0}, a);
    EXPECT_EQ(inst.predicted(), static_cast<double>(inst.days()));
    EXPECT_EQ(gen_ski_instance(100, NoiseModel{0.0, 0}, b).days(), inst.days());
}

TEST(Pareto, FloorsAndDeterminism) {
    for (auto kind : {ParetoKind::Lomax, ParetoKind::Classic}) {
        const ParetoJobModel model{kind, 1.1, kind == ParetoKind::Lomax ? 1000.0 : 1.0, 50, 0};
        Rng rng(derive_seed(5, {static_cast<std::uint64_t>(kind)}));
        for (int s = 0; s < 200; ++s)
            for (double x : gen_pareto_lengths(model, rng)) ASSERT_GE(x, std::max(1.0, kind == ParetoKind::Classic ? model.scale : 1.0));
        Rng a(11), b(11);
        const auto ja = gen_pareto_jobs(model, a), jb = gen_pareto_jobs(model, b);
        for (std::size_t j = 0; j < ja.size(); ++j) {
            ASSERT_EQ(ja[j].length, jb[j].length);
            ASSERT_EQ(ja[j].predicted, ja[j].length);
        }
    }
}

TEST(Pareto, ClassicTailMatchesSurvivalFunction) {
    // P(X > t) = (scale/t)^alpha for t >= scale
    Rng rng(derive_seed(5, {9}));
    const int n = 200000;
    int above = 0;
    for (int i = 0; i < n; ++i) above += sample_pareto(ParetoKind::Classic, 1.1, 2.0, rng) > 10.0;
    const double p = std::pow(2.0 / 10.0, 1.1);
    EXPECT_NEAR(static_cast<double>(above) / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(Pareto, LomaxTailMatchesSurvivalFunction) {
    // P(X > t) = (1 + t/scale)^-alpha
    Rng rng(derive_seed(5, {10}));
    const int n = 200000;
    int above = 0;
    for (int i = 0; i < n; ++i) above += sample_pareto(ParetoKind::Lomax, 1.1, 1000.0, rng) > 5000.0;
    const double p = std::pow(1.0 + 5.0, -1.1);
    EXPECT_NEAR(static_cast<double>(above) / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(Pareto, MedianSetMeanInBand) {
    const ParetoJobModel model{};  // alpha 1.1, n 50
    std::vector<double> means;
    for (std::uint64_t s = 0; s < 2001; ++s) {
        Rng rng(derive_seed(20180611, {s}));
        const auto x = gen_pareto_lengths(model, rng);
        double sum = 0.0;
        for (double v : x) sum += v;
        means.push_back(sum / static_cast<double>(x.size()));
    }
    std::nth_element(means.begin(), means.begin() + 1000, means.end());
    EXPECT_GE(means[1000], 500.0);
    EXPECT_LE(means[1000], 10000.0);
}

TEST(Pareto, ModelValidation) {
    Rng rng(1);
    EXPECT_THROW(gen_pareto_lengths(ParetoJobModel{ParetoKind::Lomax, 1.0}, rng), InvalidArgument);
    EXPECT_THROW(gen_pareto_lengths(ParetoJobModel{ParetoKind::Lomax, 1.1, 0.0}, rng), InvalidArgument);
    EXPECT_THROW(gen_pareto_lengths(ParetoJobModel{ParetoKind::Lomax, 1.1, 1.0, 0}, rng), InvalidArgument);
    EXPECT_NEAR(ParetoJobModel{}.mean(), 10000.0, 1e-6);
}

TEST(NoisyJobs, KeepLengthsAndIds) {
    Rng rng(12);
    const auto jobs = gen_pareto_jobs(ParetoJobModel{}, rng);
    const auto noisy = with_noisy_predictions(jobs, NoiseModel{500.0, 0}, rng);
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        ASSERT_EQ(noisy[j].id, jobs[j].id);
        ASSERT_EQ(noisy[j].length, jobs[j].length);
    }
}

TEST(Seeds, DerivedSeedsDiffer) {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 1000; ++i) seeds.push_back(derive_seed(20180611, {1, i}));
    std::sort(seeds.begin(), seeds.end());
    EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
    EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
}

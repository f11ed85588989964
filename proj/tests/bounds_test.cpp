#include "augur/bounds.hpp"
#include "augur/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace augur;
using namespace augur::bounds;

namespace {
const double kE = std::exp(1.0);
const double kHuge = 1e15;
}  // namespace

TEST(DetSkiBound, Examples) {
    EXPECT_DOUBLE_EQ(det_ski_bound(100, 0.5, 0.0, 50.0), 1.5);
    EXPECT_DOUBLE_EQ(det_ski_bound(100, 0.5, kHuge, 50.0), 3.0);
    EXPECT_DOUBLE_EQ(det_ski_bound(100, 0.9, 0.0, 7.0), 1.9);
}

TEST(DetSkiBound, Domain) {
    EXPECT_THROW(det_ski_bound(100, 1.0, 0.0, 10.0), InvalidArgument);
    EXPECT_THROW(det_ski_bound(100, 0.0, 0.0, 10.0), InvalidArgument);
    EXPECT_THROW(det_ski_bound(100, 0.5, 0.0, 0.5), InvalidArgument);
    EXPECT_THROW(det_ski_bound(100, 0.5, -1.0, 10.0), InvalidArgument);
}

TEST(RandSkiBound, Examples) {
    const double l = std::log(1.5);
    EXPECT_NEAR(rand_ski_bound(100, l, 0.0, 80.0), 1.2164, 1e-4);
    EXPECT_NEAR(rand_ski_bound(100, l, 0.0, 80.0), l / (1.0 - std::exp(-l)), 1e-14);
    EXPECT_NEAR(rand_ski_bound(100, l, kHuge, 80.0), 3.0922, 1e-4);
    EXPECT_NEAR(rand_ski_bound(100, l, kHuge, 80.0), 1.01 / (1.0 - std::exp(-(l - 0.01))), 1e-12);
    EXPECT_NEAR(rand_ski_bound(1000000000, 1.0, kHuge, 80.0), kE / (kE - 1.0), 1e-8);
}

TEST(RandSkiBound, Domain) {
    EXPECT_THROW(rand_ski_bound(100, 0.01, 0.0, 10.0), InvalidArgument);
    EXPECT_THROW(rand_ski_bound(100, 0.005, 0.0, 10.0), InvalidArgument);
    EXPECT_THROW(rand_ski_bound(100, 1.01, 0.0, 10.0), InvalidArgument);
    EXPECT_THROW(rand_ski_bound(1, 0.5, 0.0, 10.0), InvalidArgument);
    EXPECT_NO_THROW(rand_ski_bound(100, 1.0, 0.0, 10.0));
}

TEST(SchedulingBounds, Examples) {
    EXPECT_DOUBLE_EQ(spjf_bound(50, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(spjf_bound(2, 2.0), 3.0);
    EXPECT_DOUBLE_EQ(spjf_bound(50, 25.0), 2.0);
    EXPECT_THROW(spjf_bound(0, 1.0), InvalidArgument);

    EXPECT_DOUBLE_EQ(prr_bound(10, 0.0, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(prr_bound(10, kHuge, 0.5), 4.0);
    EXPECT_NEAR(prr_bound(7, 0.0, 2.0 / 3.0), 1.5, 1e-15);
    EXPECT_THROW(prr_bound(10, 0.0, 1.0), InvalidArgument);

    EXPECT_DOUBLE_EQ(prr_perfect_bound(0.5), 1.5);
    EXPECT_NEAR(prr_perfect_bound(1.0 - 1e-12), 1.0, 1e-11);
    EXPECT_DOUBLE_EQ(prr_perfect_bound(0.25), 2.5);
    EXPECT_THROW(prr_perfect_bound(0.0), InvalidArgument);
}

TEST(Bounds, MonotoneInError) {
    const double etas[] = {0.0, 0.1, 1.0, 3.0, 10.0, 100.0, 1e4, 1e9};
    for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (double opt : {1.0, 5.0, 100.0})
            for (std::size_t i = 1; i < std::size(etas); ++i) {
                EXPECT_LE(det_ski_bound(100, lambda, etas[i - 1], opt), det_ski_bound(100, lambda, etas[i], opt));
                EXPECT_LE(rand_ski_bound(100, lambda, etas[i - 1], opt), rand_ski_bound(100, lambda, etas[i], opt));
                EXPECT_LE(naive_ski_bound(etas[i - 1], opt), naive_ski_bound(etas[i], opt));
                EXPECT_LE(spjf_bound(8, etas[i - 1]), spjf_bound(8, etas[i]));
                EXPECT_LE(prr_bound(8, etas[i - 1], lambda), prr_bound(8, etas[i], lambda));
            }
}

TEST(BoundReport, SatisfiedUsesTolerance) {
    EXPECT_TRUE(make_report("x", {}, 1.5, 1.5 + 5e-10).satisfied);
    EXPECT_FALSE(make_report("x", {}, 1.5, 1.5 + 2e-9).satisfied);
    EXPECT_NEAR(make_report("x", {}, 2.0, 1.5).slack(), -0.5, 1e-15);
}

TEST(Auxiliary, BoundaryEqualities) {
    EXPECT_DOUBLE_EQ(exp_gap_lhs(1.0), 1.0);
    EXPECT_NEAR(chord_rhs(1.0), 1.0 / kE, 1e-15);
    EXPECT_NEAR(chord_lhs(1.0), 1.0 / kE, 1e-15);
    EXPECT_NEAR(inv_exp_lhs(1.0), inv_exp_rhs(1.0), 1e-15);
}

TEST(Auxiliary, LongSupportExample) {
    EXPECT_NEAR(support_bound_lhs(2, 0.9), 2.400, 2e-3);
    EXPECT_NEAR(support_bound_rhs(2, 0.9), 4.551, 2e-3);
    EXPECT_LE(support_bound_lhs(2, 0.9), support_bound_rhs(2, 0.9));
}

TEST(Auxiliary, ChordRhsMatchesDirectFormula) {
    for (double x = 0.05; x <= 1.0; x += 0.05)
        EXPECT_NEAR(chord_rhs(x), 1.0 - 1.0 / x + std::exp(-x) / x, 1e-12);
}

TEST(Auxiliary, FullGridHasNoViolations) {
    const auto reports = check_auxiliary_inequalities(AuxiliaryGrid{});
    std::size_t exp_gap = 0, inv_exp = 0, chord = 0, support = 0;
    for (const auto& r : reports) {
        ASSERT_TRUE(r.satisfied) << r.bound_name << " slack " << r.slack();
        ASSERT_EQ(r.tolerance, 1e-12);
        if (r.bound_name == "aux_exp_gap") ++exp_gap;
        if (r.bound_name == "aux_inv_exp") ++inv_exp;
        if (r.bound_name == "aux_chord") ++chord;
        if (r.bound_name == "aux_long_support") {
            ++support;
            ASSERT_GT(*r.parameters.lambda, 1.0 / static_cast<double>(*r.parameters.b));
            ASSERT_LT(*r.parameters.lambda, 1.0);
        }
    }
    EXPECT_EQ(exp_gap, 1000u);
    EXPECT_EQ(inv_exp, 1000u);
    EXPECT_EQ(chord, 1000u);
    EXPECT_EQ(support, 999u * 100u);
}

TEST(Auxiliary, RejectsBadGrid) {
    EXPECT_THROW(check_auxiliary_inequalities({0.0}), InvalidArgument);
    EXPECT_THROW(check_auxiliary_inequalities({1e-3, 1}), InvalidArgument);
    EXPECT_THROW(check_auxiliary_inequalities({1e-3, 2, 1000, 0}), InvalidArgument);
}

TEST(Tradeoff, RandomizedDominatesDeterministic) {
    const auto det = experiments::linear_grid(0.05, 1.0, 0.05);
    std::vector<double> rnd;
    for (int i = 1; i <= 2000; ++i) rnd.push_back(0.01 + 0.99 * i / 2000.0);
    for (const auto& row : experiments::randomized_dominance(100, det, rnd)) {
        EXPECT_TRUE(row.found) << row.det_lambda;
        EXPECT_TRUE(row.strictly_better()) << row.det_lambda;
        EXPECT_LE(row.rand_robustness, row.det_robustness);
    }
}

TEST(Tradeoff, CurveRows) {
    const auto rows = experiments::run_tradeoff_curve(100, {0.005, 0.5, 1.0});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_TRUE(std::isnan(rows[0].rand_robustness));
    EXPECT_DOUBLE_EQ(rows[1].det_robustness, 3.0);
    EXPECT_DOUBLE_EQ(rows[1].det_consistency, 1.5);
    EXPECT_DOUBLE_EQ(rows[2].det_robustness, 2.0);
    EXPECT_DOUBLE_EQ(rows[2].det_consistency, 2.0);
    EXPECT_NEAR(rows[2].rand_consistency, kE / (kE - 1.0), 1e-12);
    EXPECT_NEAR(rows[2].rand_robustness, kE / (kE - 1.0), 0.03);
    // as b grows the classical endpoint tends to e/(e-1) on both axes
    const auto big = experiments::run_tradeoff_curve(100000000, {1.0});
    EXPECT_NEAR(big[0].rand_robustness, kE / (kE - 1.0), 1e-6);
}

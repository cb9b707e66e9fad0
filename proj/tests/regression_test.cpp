#include "gamify/regression.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"

namespace {

using namespace gamify;
using gamify::testing::Gen;

Dataset paper_dataset() { return generate_synthetic_dataset(1000, 0); }

TEST(SyntheticData, SizeRangesAndLabelRule) {
    const Dataset d = paper_dataset();
    ASSERT_EQ(d.size(), 1000u);
    for (const auto& r : d) {
        ASSERT_GE(r.engagement, 0.0);
        ASSERT_LT(r.engagement, 1.0);
        ASSERT_GE(r.reward, 0.0);
        ASSERT_LT(r.reward, 10.0);
        ASSERT_EQ(r.retention, r.engagement * 0.5 + r.reward * 0.5 > 5.0 ? 1 : 0);
    }
}

TEST(SyntheticData, LabelRuleBoundary) {
    EXPECT_EQ(retention_label(0.9, 9.5), 1);  // 5.2 > 5
    EXPECT_EQ(retention_label(0.5, 9.5), 0);  // exactly 5, strict
    EXPECT_EQ(retention_label(0.0, 9.99), 0);
}

TEST(SyntheticData, DeterministicAndSeedSensitive) {
    EXPECT_EQ(generate_synthetic_dataset(50, 9), generate_synthetic_dataset(50, 9));
    EXPECT_NE(generate_synthetic_dataset(50, 9), generate_synthetic_dataset(50, 10));
}

TEST(SyntheticData, RejectsZeroRows) { EXPECT_THROW(generate_synthetic_dataset(0, 1), DomainError); }

TEST(SyntheticData, PositiveRateMatchesAnalyticArea) {
    // P(E + R > 10) with E ~ U[0,1), R ~ U[0,10): triangle of area 1/2 over 10.
    const double analytic = 0.5 / 10.0;
    const double mc = gamify::testing::monte_carlo_positive_rate(99, 1000000);
    EXPECT_NEAR(mc, analytic, 0.001);
    const double rate = positive_rate(generate_synthetic_dataset(100000, 1));
    EXPECT_NEAR(rate, analytic, 0.005);
}

TEST(Split, SizesFromRounding) {
    const Dataset d = paper_dataset();
    const auto s = train_test_split(d, 0.2, 42);
    EXPECT_EQ(s.test.size(), 200u);
    EXPECT_EQ(s.train.size(), 800u);
    EXPECT_EQ(train_test_split(generate_synthetic_dataset(10, 0), 0.1, 1).test.size(), 1u);
}

TEST(Split, PartitionProperty) {
    Gen g(11);
    for (int i = 0; i < 100; ++i) {
        const auto n = static_cast<std::size_t>(g.integer(2, 300));
        const Dataset d = generate_synthetic_dataset(n, static_cast<std::uint64_t>(i));
        double frac = g.real(0.01, 0.99);
        const auto k = test_count(n, frac);
        if (k < 1 || k >= n) {
            EXPECT_THROW(train_test_split(d, frac, 5), DomainError);
            continue;
        }
        const auto s = train_test_split(d, frac, static_cast<std::uint64_t>(i));
        ASSERT_EQ(s.test.size(), k);
        std::vector<int> seen(n, 0);
        for (auto idx : s.test_indices) ++seen[idx];
        for (auto idx : s.train_indices) ++seen[idx];
        ASSERT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
        for (std::size_t j = 0; j < s.test.size(); ++j) ASSERT_EQ(s.test[j], d[s.test_indices[j]]);
    }
}

TEST(Split, Deterministic) {
    const Dataset d = paper_dataset();
    const auto a = train_test_split(d, 0.2, 42), b = train_test_split(d, 0.2, 42),
               c = train_test_split(d, 0.2, 43);
    EXPECT_EQ(a.test_indices, b.test_indices);
    EXPECT_EQ(a.train_indices, b.train_indices);
    EXPECT_NE(a.test_indices, c.test_indices);
}

TEST(Split, DegenerateFractions) {
    const Dataset d = generate_synthetic_dataset(10, 0);
    EXPECT_THROW(train_test_split(d, 0.0, 1), DomainError);
    EXPECT_THROW(train_test_split(d, 1.0, 1), DomainError);
    EXPECT_THROW(train_test_split(d, 0.01, 1), DomainError);  // rounds to 0
    EXPECT_THROW(train_test_split(d, 0.97, 1), DomainError);  // rounds to 10
    EXPECT_THROW(train_test_split(generate_synthetic_dataset(1, 0), 0.5, 1), DomainError);
}

TEST(Loss, ZeroWeightsBalancedLabels) {
    const Dataset d{{0.1, 1.0, 0}, {0.7, 9.0, 1}, {0.3, 4.0, 0}, {0.9, 2.0, 1}};
    const RetentionModel m;
    const auto lg = loss_and_gradient(m, d);
    EXPECT_NEAR(lg.loss, std::log(2.0), 1e-15);
    // p = 0.5 everywhere: gradient = mean((0.5 - y) * x)
    double ge = 0, gr = 0, gb = 0;
    for (const auto& r : d) {
        ge += (0.5 - r.retention) * r.engagement;
        gr += (0.5 - r.retention) * r.reward;
        gb += 0.5 - r.retention;
    }
    EXPECT_NEAR(lg.gradient[0], ge / 4, 1e-15);
    EXPECT_NEAR(lg.gradient[1], gr / 4, 1e-15);
    EXPECT_NEAR(lg.gradient[2], gb / 4, 1e-15);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
    Gen g(12);
    for (int i = 0; i < 100; ++i) {
        const auto c = gamify::testing::random_gradient_case(g);
        const auto analytic = loss_and_gradient(c.model, c.data).gradient;
        const auto numeric = gamify::testing::finite_difference_gradient(c.model, c.data);
        ASSERT_LT(gamify::testing::relative_error(analytic, numeric), 1e-5) << "case " << i;
    }
}

TEST(Loss, EmptyDatasetRejected) {
    EXPECT_THROW(loss_and_gradient(RetentionModel{}, Dataset{}), DomainError);
}

TEST(Fit, SingleClassRejected) {
    const Dataset d{{0.1, 1.0, 0}, {0.2, 2.0, 0}};
    EXPECT_THROW(fit_logistic(d, FitConfig{}), FitError);
}

TEST(Fit, InvalidConfigRejected) {
    const Dataset d{{0.1, 1.0, 0}, {0.9, 9.8, 1}};
    FitConfig bad;
    bad.learning_rate = 0.0;
    EXPECT_THROW(fit_logistic(d, bad), DomainError);
}

TEST(Fit, LossDecreasesFromLn2) {
    Gen g(13);
    for (int i = 0; i < 20; ++i) {
        Dataset d;
        for (int k = 0; k < 50; ++k) d.push_back({g.real(0, 1), g.real(0, 10), g.coin() ? 1 : 0});
        FitConfig cfg;
        cfg.max_epochs = 200;
        const auto fit = fit_logistic(d, cfg);
        EXPECT_NEAR(fit.initial_loss, std::log(2.0), 1e-15);
        EXPECT_LE(fit.final_loss, fit.initial_loss);
    }
}

TEST(Fit, StopsOnGradientTolerance) {
    // Overlapping classes have a finite optimum, so descent converges.
    const Dataset d{{0.2, 2.0, 0}, {0.4, 4.0, 1}, {0.6, 6.0, 0}, {0.8, 8.0, 1}, {0.5, 5.0, 1},
                    {0.3, 3.0, 0}};
    FitConfig cfg;
    cfg.convergence_tol = 1e-8;
    const auto fit = fit_logistic(d, cfg);
    EXPECT_TRUE(fit.converged);
    EXPECT_LT(fit.epochs_used, cfg.max_epochs);
    const auto g = loss_and_gradient(fit.model, d).gradient;
    EXPECT_LT(std::hypot(g[0], g[1], g[2]), 1e-8);
}

TEST(Fit, PaperPipelineBeatsLinearOracle) {
    const auto split = train_test_split(paper_dataset(), 0.2, 42);
    const auto oracle = gamify::testing::grid_search_boundary(split.train);
    const double oracle_acc = gamify::testing::boundary_accuracy(split.test, oracle.theta, oracle.c);
    ASSERT_GE(oracle_acc, 0.97);

    const auto fit = fit_logistic(split.train, FitConfig{});
    const double acc = accuracy(predict_labels(fit.model, split.test), labels_of(split.test));
    EXPECT_GE(acc, 0.97);
    EXPECT_GT(fit.model.weights[0], 0.0);
    EXPECT_GT(fit.model.weights[1], 0.0);
    EXPECT_GT(predict_proba(fit.model, 1.0, 9.9), 0.5);
}

TEST(Fit, BitIdenticalRepeat) {
    const auto split = train_test_split(paper_dataset(), 0.2, 42);
    const auto a = fit_logistic(split.train, FitConfig{});
    const auto b = fit_logistic(split.train, FitConfig{});
    EXPECT_EQ(a.model.weights, b.model.weights);
    EXPECT_EQ(a.model.bias, b.model.bias);
    EXPECT_EQ(a.epochs_used, b.epochs_used);
}

TEST(Fit, ConstantFeatureKeepsUnitScale) {
    const Dataset d{{0.5, 1.0, 0}, {0.5, 9.0, 1}, {0.5, 2.0, 0}, {0.5, 8.0, 1}};
    const auto fit = fit_logistic(d, FitConfig{});
    EXPECT_EQ(fit.model.scaler[0].std, 1.0);
    EXPECT_EQ(fit.model.weights[0], 0.0);
}

TEST(Predict, ZeroModelAtMeansIsHalf) {
    RetentionModel m;
    m.scaler = {FeatureScale{0.4, 0.3}, FeatureScale{5.0, 2.0}};
    EXPECT_EQ(predict_proba(m, 0.4, 5.0), 0.5);
    EXPECT_EQ(predict_label(m, 0.4, 5.0), 1);  // tie goes to 1
}

TEST(Predict, MonotoneInRewardAndMatchesRetentionForm) {
    RetentionModel m;
    m.weights = {0.7, 1.3};
    m.bias = -0.4;
    m.scaler = {FeatureScale{0.5, 0.29}, FeatureScale{5.0, 2.9}};
    Gen g(14);
    for (int i = 0; i < 500; ++i) {
        const double e = g.real(0, 1), r = g.real(0, 10);
        ASSERT_LT(predict_proba(m, e, r), predict_proba(m, e, r + 0.1));
        const double xe = (e - 0.5) / 0.29, xr = (r - 5.0) / 2.9;
        ASSERT_NEAR(predict_proba(m, e, r), retention_probability(m.as_retention_params(), xe, xr),
                    1e-15);
    }
}

TEST(Predict, ThresholdRules) {
    RetentionModel m;
    m.bias = std::log(0.62 / 0.38);  // proba 0.62 everywhere
    EXPECT_EQ(predict_label(m, 0.0, 0.0, 0.99), 0);
    EXPECT_EQ(predict_label(m, 0.0, 0.0, 0.7), 0);
    EXPECT_EQ(predict_label(m, 0.0, 0.0, 0.5), 1);
    EXPECT_THROW(predict_label(m, 0.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(predict_label(m, 0.0, 0.0, 1.0), DomainError);
    EXPECT_THROW(predict_proba(m, std::nan(""), 0.0), DomainError);
}

TEST(Metrics, AccuracyExamples) {
    const std::vector<int> a{1, 0, 1, 1}, b{1, 0, 0, 1}, c{0, 1, 0, 0};
    EXPECT_EQ(accuracy(a, a), 1.0);
    EXPECT_EQ(accuracy(a, c), 0.0);
    EXPECT_EQ(accuracy(a, b), 0.75);
    EXPECT_THROW(accuracy(a, std::vector<int>{1, 0}), DomainError);
    EXPECT_THROW(accuracy(std::vector<int>{}, std::vector<int>{}), DomainError);
}

TEST(Metrics, ConfusionExamples) {
    const std::vector<int> ones(7, 1), zeros(7, 0);
    const auto perfect = confusion(ones, ones);
    EXPECT_EQ(perfect.fp + perfect.fn, 0);
    EXPECT_EQ(perfect.tp, 7);
    EXPECT_EQ(confusion(zeros, ones).fn, 7);
    EXPECT_THROW(confusion(ones, std::vector<int>{1}), DomainError);
    EXPECT_THROW(confusion(std::vector<int>{2}, std::vector<int>{1}), DomainError);
}

TEST(Metrics, ConfusionAgreesWithAccuracy) {
    Gen g(15);
    for (int i = 0; i < 200; ++i) {
        const auto n = g.integer(1, 60);
        std::vector<int> p, l;
        for (std::int64_t k = 0; k < n; ++k) {
            p.push_back(g.coin());
            l.push_back(g.coin());
        }
        const auto cm = confusion(p, l);
        ASSERT_EQ(cm.total(), n);
        ASSERT_DOUBLE_EQ(accuracy(p, l), static_cast<double>(cm.tp + cm.tn) / static_cast<double>(n));
    }
}

}  // namespace

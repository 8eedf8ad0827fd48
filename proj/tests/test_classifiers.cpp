// Copyright 2026 The SQKC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"
#include "sqkc/classifiers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

using namespace sqkc;

namespace {
void expect_consistent(const ClassifierOutcome &o) {
    EXPECT_NEAR(o.expectation, 1.0 - 2.0 * o.pr_one, 1e-10);
    EXPECT_NEAR(o.score, o.expectation, 1e-10);
    EXPECT_EQ(o.predicted_label, o.score >= 0.0 ? 0 : 1);
}
} // namespace

// ---------- classify ----------
TEST(Classify, Eq16Shc) {
    const auto o = classify(oracle::eq16(), Flavor::SHC);
    EXPECT_NEAR(o.pr_one, 0.5952, 1e-3);
    EXPECT_EQ(o.predicted_label, 1);
    expect_consistent(o);
}

TEST(Classify, Eq16Ssc) {
    const auto o = classify(oracle::eq16(), Flavor::SSC);
    EXPECT_NEAR(o.pr_one, 0.6541, 1e-3);
    EXPECT_EQ(o.predicted_label, 1);
    expect_consistent(o);
}

TEST(Classify, IdenticalAndOrthogonalSamples) {
    const auto d = make_dataset({{0.6, 0.8}, {0.8, -0.6}}, {0, 1}, {0.6, 0.8});
    const auto o = classify(d, Flavor::SSC);
    EXPECT_NEAR(o.score, 0.5, 1e-12);
    EXPECT_EQ(o.predicted_label, 0);
}

TEST(Classify, TieGoesToClassZero) {
    // equal kernels, opposite labels, equal weights -> score 0
    const auto d = make_dataset({{1, 0}, {1, 0}}, {0, 1}, {0.6, 0.8});
    const auto o = classify(d, Flavor::SHC);
    EXPECT_NEAR(o.score, 0.0, 1e-12);
    EXPECT_EQ(decide(0.0), 0);
    EXPECT_EQ(decide(-1e-300), 1);
}

TEST(Classify, LegacyFlavorsAgreeOnEq16) {
    const auto hc = classify(oracle::eq16(), Flavor::HC);
    const auto sc = classify(oracle::eq16(), Flavor::SC);
    EXPECT_NEAR(hc.pr_one, 0.5952, 1e-3);
    EXPECT_NEAR(sc.pr_one, 0.6541, 1e-3);
    expect_consistent(hc);
    expect_consistent(sc);
}

// ---------- classical_score ----------
TEST(ClassicalScore, Eq16) {
    EXPECT_NEAR(classical_score(oracle::eq16(), Kernel::RE_OVERLAP), 0.5 * (0.6184 - 0.99943), 1e-4);
    EXPECT_NEAR(classical_score(oracle::eq16(), Kernel::FIDELITY), 0.5 * (0.6184 * 0.6184 - 0.99943 * 0.99943),
                1e-4);
}

TEST(ClassicalScore, AllWeightOnTestCopy) {
    const auto d = make_dataset({{0.3, 0.4}, {1, 0}}, {0, 1}, {0.3, 0.4}, {1.0, 0.0});
    EXPECT_NEAR(classical_score(d, Kernel::FIDELITY), 1.0, 1e-12);
}

// ---------- weighted tests ----------
TEST(WeightedTest, Examples) {
    const FeatureVector a{0.6, 0.8};
    EXPECT_NEAR(weighted_test(a, a, {std::numbers::pi / 2}, TestKind::HADAMARD), 1.0, 1e-12);
    const auto &d = oracle::eq16();
    const double half = std::asin(0.5);
    EXPECT_NEAR(weighted_test(d.train_features[0], d.test_features, {half}, TestKind::HADAMARD), 0.3092, 1e-4);
    EXPECT_NEAR(weighted_test(d.train_features[0], d.test_features, {0.0}, TestKind::SWAP), 0.0, 1e-12);
    EXPECT_NEAR(weighted_test(d.train_features[1], d.test_features, {0.0}, TestKind::HADAMARD), 0.0, 1e-12);
}

TEST(WeightedTest, AngleFromWeight) {
    EXPECT_NEAR(std::sin(WeightAngle::from_weight(0, 0.3).lambda), 0.3, 1e-15);
    EXPECT_NEAR(std::sin(WeightAngle::from_weight(1, 0.3).lambda), -0.3, 1e-15);
    EXPECT_THROW(WeightAngle::from_weight(0, 1.2), InvalidArgument);
}

TEST(AggregateScore, Examples) {
    EXPECT_NEAR(superposition_free_score(oracle::eq16(), TestKind::HADAMARD), -0.1905, 2e-4);
    EXPECT_NEAR(superposition_free_score(oracle::eq16(), TestKind::SWAP), -0.3082, 2e-4);
    const double one[] = {0.25};
    EXPECT_DOUBLE_EQ(aggregate_score(one), 0.25);
    EXPECT_THROW(aggregate_score(std::span<const double>{}), InvalidArgument);
}

// ---------- properties ----------
TEST(Property, OracleAndSuperpositionFreeEquivalenceOn500Datasets) {
    std::mt19937_64 rng(500);
    for (int trial = 0; trial < 500; ++trial) {
        const auto d = oracle::random_dataset(rng, 1 + trial % 8, 1 + trial % 4);
        const auto shc = classify(d, Flavor::SHC);
        const auto ssc = classify(d, Flavor::SSC);
        ASSERT_NEAR(shc.score, oracle::score(d, false), 1e-9) << trial;
        ASSERT_NEAR(ssc.score, oracle::score(d, true), 1e-9) << trial;
        ASSERT_NEAR(classical_score(d, Kernel::RE_OVERLAP), oracle::score(d, false), 1e-12) << trial;
        ASSERT_NEAR(superposition_free_score(d, TestKind::HADAMARD), shc.score, 1e-9) << trial;
        ASSERT_NEAR(superposition_free_score(d, TestKind::SWAP), ssc.score, 1e-9) << trial;
        expect_consistent(shc);
        expect_consistent(ssc);
    }
}

TEST(Property, LabelFlipNegatesScore) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = oracle::random_dataset(rng, 2 + trial % 6, 2);
        const auto before = classify(d, Flavor::SSC);
        for (auto &y : d.labels) {
            y = 1 - y;
        }
        const auto after = classify(d, Flavor::SSC);
        EXPECT_NEAR(after.score, -before.score, 1e-12);
        if (std::abs(before.score) > 1e-12) {
            EXPECT_NE(after.predicted_label, before.predicted_label);
        }
    }
}

TEST(Property, KernelRanges) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = oracle::random_dataset(rng, 1, 1 + trial % 4, trial % 2 == 1);
        const double f = kernel_value(d.train_features[0], d.test_features, Kernel::FIDELITY);
        const double r = kernel_value(d.train_features[0], d.test_features, Kernel::RE_OVERLAP);
        EXPECT_GE(f, -1e-15);
        EXPECT_LE(f, 1.0 + 1e-12);
        EXPECT_GE(r, -1.0 - 1e-12);
        EXPECT_LE(r, 1.0 + 1e-12);
    }
}

TEST(Property, PermutationInvariance) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = oracle::random_dataset(rng, 3 + trial % 6, 2);
        std::vector<std::size_t> p(d.size());
        std::iota(p.begin(), p.end(), std::size_t{0});
        std::shuffle(p.begin(), p.end(), rng);
        LabeledDataset s = d;
        for (std::size_t i = 0; i < p.size(); ++i) {
            s.train_features[i] = d.train_features[p[i]];
            s.labels[i] = d.labels[p[i]];
            s.weights[i] = d.weights[p[i]];
        }
        for (Flavor f : {Flavor::SHC, Flavor::SSC}) {
            EXPECT_NEAR(classify(s, f).score, classify(d, f).score, 1e-12);
        }
    }
}

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
#include "sqkc/encoding.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace sqkc;

// ---------- amplitude_encode ----------
TEST(AmplitudeEncode, IrisTestSample) {
    const auto s = amplitude_encode(std::vector<double>{0.3856, 0.9227});
    EXPECT_EQ(s.n_qubits(), 1U);
    EXPECT_NEAR(s[0].real(), 0.3856, 1e-4);
    EXPECT_NEAR(s[1].real(), 0.9227, 1e-4);
}

TEST(AmplitudeEncode, BasisAndThreeFourFive) {
    const auto z = amplitude_encode(std::vector<double>{1, 0});
    EXPECT_DOUBLE_EQ(z[0].real(), 1.0);
    EXPECT_DOUBLE_EQ(z[1].real(), 0.0);
    const auto s = amplitude_encode(std::vector<double>{3, 4});
    EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(s[1].real(), 0.8, 1e-15);
}

TEST(AmplitudeEncode, PadsToPowerOfTwo) {
    const auto s = amplitude_encode(std::vector<double>{1, 2, 2});
    ASSERT_EQ(s.size(), 4U);
    EXPECT_NEAR(s[2].real(), 2.0 / 3.0, 1e-15);
    EXPECT_EQ(s[3], Complex{});
}

TEST(AmplitudeEncode, RejectsZeroAndEmpty) {
    EXPECT_THROW(amplitude_encode(std::vector<double>{0, 0}), InvalidArgument);
    EXPECT_THROW(amplitude_encode(std::vector<double>{}), InvalidArgument);
}

TEST(StatePreparation, MatrixIsUnitaryAndMapsZero) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = oracle::random_dataset(rng, 1, 8, trial % 2 == 0);
        const auto v = normalized_padded(d.train_features[0]);
        const auto u = state_preparation_matrix(v);
        EXPECT_LT(u.unitarity_error(), 1e-12);
        for (std::size_t r = 0; r < v.size(); ++r) {
            EXPECT_NEAR(std::abs(u(r, 0) - v[r]), 0.0, 1e-12);
        }
    }
}

// ---------- dataset validation ----------
TEST(LabeledDataset, Validation) {
    EXPECT_THROW(validate(make_dataset({{1, 0}}, {0}, {1, 0}, {0.7})), InvalidArgument);
    EXPECT_THROW(validate(make_dataset({{1, 0}}, {2}, {1, 0})), InvalidArgument);
    EXPECT_THROW(validate(make_dataset({{1, 0}, {1}}, {0, 1}, {1, 0})), InvalidArgument);
    EXPECT_THROW(validate(make_dataset({}, {}, {1, 0})), InvalidArgument);
    EXPECT_THROW(validate(make_dataset({{1, 0}, {0, 1}}, {0, 1}, {1, 0}, {1.5, -0.5})), InvalidArgument);
    EXPECT_NO_THROW(validate(oracle::eq16()));
}

// ---------- class-ordered encoding ----------
TEST(ClassOrdered, SortsAndPermutes) {
    const auto d = make_dataset({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 3}}, {1, 0, 1, 0, 0}, {1, 1},
                                {0.1, 0.2, 0.3, 0.15, 0.25});
    const auto enc = encode_class_ordered(d);
    const auto &o = enc.class_ordered;
    EXPECT_TRUE(std::is_sorted(o.labels.begin(), o.labels.end()));
    std::vector<std::size_t> seen = enc.permutation;
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        EXPECT_EQ(seen[i], i);
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_EQ(o.labels[enc.permutation[i]], d.labels[i]);
        EXPECT_EQ(o.weights[enc.permutation[i]], d.weights[i]);
    }
    // three class-0 samples -> 2 bits per half, plus the class bit
    EXPECT_EQ(enc.index_qubits, 3U);
    for (std::size_t p = 0; p < o.size(); ++p) {
        EXPECT_EQ((enc.slots[p] >> (enc.index_qubits - 1)) & 1U, static_cast<std::size_t>(o.labels[p]));
    }
}

TEST(ClassOrdered, BalancedPowerOfTwoUsesLog2M) {
    std::mt19937_64 rng(1);
    for (std::size_t m : {2U, 4U, 8U}) {
        auto d = oracle::random_dataset(rng, m, 2);
        for (std::size_t i = 0; i < m; ++i) {
            d.labels[i] = i < m / 2 ? 0 : 1;
        }
        EXPECT_EQ(encode_class_ordered(d).index_qubits, qubits_for(m));
    }
}

// ---------- prepare_sqkc_state ----------
TEST(PrepareSqkc, Eq16QubitCountsAndReadout) {
    const auto enc = encode_class_ordered(oracle::eq16());
    auto shc = prepare_sqkc_state(enc, Flavor::SHC);
    EXPECT_EQ(shc.n_qubits(), 3U);
    EXPECT_NEAR(shc.norm_squared(), 1.0, 1e-12);
    const auto l = sqkc_layout(enc, Flavor::SHC);
    apply(shc, gates::h(l.ancilla));
    apply(shc, gates::cnot(l.class_qubit, l.ancilla));
    EXPECT_NEAR(probability(shc, l.ancilla, 1), 0.5952, 1e-3);

    auto ssc = prepare_sqkc_state(enc, Flavor::SSC);
    EXPECT_EQ(ssc.n_qubits(), 4U);
    EXPECT_NEAR(ssc.norm_squared(), 1.0, 1e-12);
    EXPECT_NEAR(probability(ssc, 0, 1), 0.0, 1e-15); // ancilla untouched before the test
}

TEST(PrepareSqkc, IdenticalStatesInterfereFully) {
    const auto d = make_dataset({{0.3, 0.7}}, {0}, {0.3, 0.7}, {1.0});
    const auto enc = encode_class_ordered(d);
    auto s = prepare_sqkc_state(enc, Flavor::SHC);
    apply(s, gates::h(0));
    EXPECT_NEAR(probability(s, 0, 1), 0.0, 1e-12);
}

TEST(PrepareSqkc, ClassQubitCarriesClassWeight) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = oracle::random_dataset(rng, 2 + trial % 7, 2 + trial % 3);
        const auto enc = encode_class_ordered(d);
        for (Flavor f : {Flavor::SHC, Flavor::SSC}) {
            const auto s = prepare_sqkc_state(enc, f);
            const auto l = sqkc_layout(enc, f);
            double w1 = 0.0;
            for (std::size_t m = 0; m < d.size(); ++m) {
                w1 += d.labels[m] == 1 ? d.weights[m] : 0.0;
            }
            EXPECT_NEAR(probability(s, l.class_qubit, 1), w1, 1e-12);
            const std::size_t d_qubits = qubits_for(d.dimension());
            EXPECT_EQ(s.n_qubits(), 1 + enc.index_qubits + d_qubits * (f == Flavor::SSC ? 2 : 1));
        }
    }
}

TEST(PrepareSqkc, ComplexFeaturesOnlyForSwapFlavors) {
    std::mt19937_64 rng(4);
    const auto d = oracle::random_dataset(rng, 4, 2, true);
    EXPECT_THROW(classify(d, Flavor::SHC), InvalidArgument);
    EXPECT_THROW(classify(d, Flavor::HC), InvalidArgument);
    EXPECT_NEAR(classify(d, Flavor::SSC).score, oracle::score(d, true), 1e-10);
    EXPECT_NEAR(classify(d, Flavor::SC).score, oracle::score(d, true), 1e-10);
}

// ---------- prepare_legacy_state ----------
TEST(PrepareLegacy, Eq16Observables) {
    const auto &d = oracle::eq16();
    for (auto [f, want] : {std::pair{Flavor::HC, 0.5 * (0.6184 - 0.99943)},
                           std::pair{Flavor::SC, 0.5 * (0.6184 * 0.6184 - 0.99943 * 0.99943)}}) {
        auto s = prepare_legacy_state(d, f);
        EXPECT_EQ(s.n_qubits(), f == Flavor::HC ? 4U : 5U);
        const auto l = legacy_layout(d, f);
        run(s, interference_circuit(l.ancilla, l.data, l.test, f));
        const std::size_t q[] = {l.ancilla, l.class_qubit};
        EXPECT_NEAR(expectation_z(s, q), want, 2e-3) << to_string(f);
    }
}

TEST(PrepareLegacy, SingleClassZeroSampleLeavesClassQubitZero) {
    const auto d = make_dataset({{0.6, 0.8}}, {0}, {1, 0});
    const auto s = prepare_legacy_state(d, Flavor::HC);
    EXPECT_NEAR(probability(s, legacy_layout(d, Flavor::HC).class_qubit, 0), 1.0, 1e-15);
}

// ---------- properties ----------
TEST(Property, SimplifiedEqualsLegacyOn200Datasets) {
    std::mt19937_64 rng(200);
    const std::size_t ms[] = {2, 4, 8};
    const std::size_t ns[] = {2, 4};
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = oracle::random_dataset(rng, ms[trial % 3], ns[(trial / 3) % 2]);
        EXPECT_NEAR(classify(d, Flavor::SHC).expectation, classify(d, Flavor::HC).expectation, 1e-10) << trial;
        EXPECT_NEAR(classify(d, Flavor::SSC).expectation, classify(d, Flavor::SC).expectation, 1e-10) << trial;
    }
}

TEST(Property, PartialTraceEqualsWeightedPerSampleSum) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = oracle::random_dataset(rng, 2 + trial % 7, 2 + trial % 3);
        for (auto [f, k] : {std::pair{Flavor::SHC, TestKind::HADAMARD}, std::pair{Flavor::SSC, TestKind::SWAP}}) {
            double sum = 0.0;
            for (std::size_t m = 0; m < d.size(); ++m) {
                sum += weighted_test(d.train_features[m], d.test_features,
                                     WeightAngle::from_weight(d.labels[m], d.weights[m]), k);
            }
            EXPECT_NEAR(classify(d, f).expectation, sum, 1e-10);
        }
    }
}

TEST(Property, UnbalancedThreeSamples) {
    const auto d = make_dataset({{0.2, 0.9}, {0.8, 0.1}, {0.5, 0.5}}, {0, 0, 1}, {0.6, 0.4}, {0.5, 0.2, 0.3});
    EXPECT_NEAR(classify(d, Flavor::SHC).score, oracle::score(d, false), 1e-10);
    EXPECT_NEAR(classify(d, Flavor::SSC).score, oracle::score(d, true), 1e-10);
    EXPECT_NEAR(classify(d, Flavor::HC).score, oracle::score(d, false), 1e-10);
}

TEST(Property, UnusedIndexSlotsGetZeroAmplitude) {
    const auto d = make_dataset({{0.2, 0.9}, {0.8, 0.1}, {0.5, 0.5}}, {0, 0, 1}, {0.6, 0.4}, {0.5, 0.2, 0.3});
    const auto enc = encode_class_ordered(d);
    const auto s = prepare_sqkc_state(enc, Flavor::SSC);
    const auto l = sqkc_layout(enc, Flavor::SSC);
    const auto dist = marginal_distribution(s, l.index);
    std::vector<bool> used(dist.size(), false);
    for (auto slot : enc.slots) {
        used[slot] = true;
    }
    for (std::size_t v = 0; v < dist.size(); ++v) {
        if (!used[v]) {
            EXPECT_NEAR(dist[v], 0.0, 1e-15) << v;
        }
    }
}

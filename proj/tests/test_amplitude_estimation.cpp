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
#include "sqkc/amplitude_estimation.hpp"
#include "sqkc/experiments.hpp"
#include "sqkc/statistics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sqkc;

namespace {

constexpr double kPi = std::numbers::pi;

StatePrepOracle eq16_ssc() { return sqkc_oracle(oracle::eq16(), Flavor::SSC); }

double rotated(double a, std::size_t k) {
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * std::asin(std::sqrt(a)));
    return s * s;
}

// Direct DFT sum for QPE over a two-dimensional invariant subspace:
// amplitude of y is (1/sqrt 2) sum over +-phi of (1/T) sum_k e^{2 pi i k (phi - y/T)}.
double pmf_by_dft(std::uint64_t y, std::size_t t, double theta) {
    const auto T = static_cast<std::uint64_t>(1) << t;
    double p = 0.0;
    for (double sign : {1.0, -1.0}) {
        std::complex<double> amp = 0.0;
        for (std::uint64_t k = 0; k < T; ++k) {
            amp += std::polar(1.0, 2.0 * kPi * static_cast<double>(k) *
                                       (sign * theta / kPi - static_cast<double>(y) / static_cast<double>(T)));
        }
        p += 0.5 * std::norm(amp / static_cast<double>(T));
    }
    return p;
}

double expectation(const std::vector<double> &pmf, std::size_t t) {
    double e = 0.0;
    for (std::size_t y = 0; y < pmf.size(); ++y) {
        e += pmf[y] * qae_value(y, t);
    }
    return e;
}

} // namespace

// ---------- build_grover ----------
TEST(Grover, QuarterAmplitudeIsFullyAmplified) {
    const auto s = amplified_state(rotation_oracle(0.25), 1);
    EXPECT_NEAR(probability(s, 0, 1), 1.0, 1e-12);
}

TEST(Grover, ZeroAmplitudeStaysZero) {
    const auto o = rotation_oracle(0.0);
    const auto s0 = prepare(o);
    const auto s1 = amplified_state(o, 1);
    EXPECT_NEAR(probability(s1, 0, 1), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(s0, s1)), 1.0, 1e-12);
}

TEST(Grover, Eq16SscOneIterate) {
    const auto o = eq16_ssc();
    const double a = good_probability(o);
    EXPECT_NEAR(a, 0.6541, 1e-3);
    const double p = good_probability(amplified_state(o, 1), o);
    EXPECT_NEAR(p, rotated(a, 1), 1e-10);
    EXPECT_NEAR(p, 0.0963, 1e-3);
}

TEST(Grover, PreservesNormOnRandomStates) {
    std::mt19937_64 rng(5);
    const auto q = build_grover(eq16_ssc());
    std::normal_distribution<double> g;
    std::vector<Complex> v(16);
    double n = 0.0;
    for (auto &z : v) {
        z = {g(rng), g(rng)};
        n += std::norm(z);
    }
    for (auto &z : v) {
        z /= std::sqrt(n);
    }
    auto s = StateVector::from_amplitudes(v);
    run(s, q);
    run(s, q);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
}

TEST(Property, RotationIdentity) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.001, 0.999);
    for (int trial = 0; trial < 40; ++trial) {
        auto o = rotation_oracle(u(rng));
        if (trial % 2 == 1) {
            o.target = Target::PROB_ZERO;
        }
        const double a = good_probability(o);
        auto s = prepare(o);
        const auto q = build_grover(o);
        for (std::size_t k = 0; k <= 8; ++k) {
            ASSERT_NEAR(good_probability(s, o), rotated(a, k), 1e-9) << "trial " << trial << " k " << k;
            run(s, q);
        }
    }
}

TEST(Property, RotationIdentityOnClassifierOracles) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const auto d = oracle::random_dataset(rng, 2 + trial % 3, 2);
        for (Flavor f : {Flavor::SHC, Flavor::SSC}) {
            for (Target tg : {Target::PROB_ONE, Target::PROB_ZERO}) {
                const auto o = sqkc_oracle(d, f, tg);
                const double a = good_probability(o);
                for (std::size_t k : {1U, 3U}) {
                    EXPECT_NEAR(good_probability(amplified_state(o, k), o), rotated(a, k), 1e-9);
                }
            }
        }
    }
}

// ---------- QAE ----------
TEST(Qae, Eq16ExactT2) {
    const auto e = run_qae(eq16_ssc(), {2, 1, Target::PROB_ONE}, 0, QaeMode::EXACT);
    EXPECT_NEAR(e.a_hat, 0.5, 1e-12);
    EXPECT_NEAR(e.pmf[1] + e.pmf[3], 0.9, 0.01);
    EXPECT_EQ(e.n_queries, 4U);
    EXPECT_EQ(e.samples_used, 8U);
    EXPECT_NEAR(e.a_hat, std::pow(std::sin(e.theta_hat), 2), 1e-12);
}

TEST(Qae, ZeroAmplitude) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto e = run_qae(rotation_oracle(0.0), {4, 3, Target::PROB_ONE}, seed);
        EXPECT_EQ(e.y, 0U);
        EXPECT_EQ(e.a_hat, 0.0);
    }
}

TEST(Qae, HalfIsExactlyRepresentable) {
    for (std::size_t t = 2; t <= 6; ++t) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            EXPECT_NEAR(run_qae(rotation_oracle(0.5), {t, 1, Target::PROB_ONE}, seed).a_hat, 0.5, 1e-12);
        }
    }
}

TEST(Qae, CapacityEnforced) {
    StatePrepOracle big{{gates::h(0)}, 20, 0, Target::PROB_ONE};
    EXPECT_THROW(qae_outcome_distribution(big, 5), CapacityError);
    EXPECT_THROW(run_qae(big, {5, 1, Target::PROB_ONE}, 1), CapacityError);
}

TEST(Qae, TieGoesToSmallestY) {
    ShotCounts c;
    c.bit_width = 3;
    c.total_shots = 4;
    c.counts = {{5, 2}, {3, 2}};
    EXPECT_EQ(most_frequent(c), 3U);
}

TEST(QaeDistribution, Eq16Examples) {
    const auto o = eq16_ssc();
    const auto p3 = qae_outcome_distribution(o, 3);
    EXPECT_NEAR(p3[3] + p3[5], 0.27, 0.01); // a~ = sin^2(3 pi / 8) = 0.8536
    EXPECT_NEAR(qae_value(3, 3), 0.8536, 1e-4);
    const auto p2 = qae_outcome_distribution(o, 2);
    EXPECT_NEAR(expectation(p2, 2), 0.5140, 0.001);
}

TEST(QaeDistribution, ZeroIsPointMass) {
    const auto p = qae_outcome_distribution(rotation_oracle(0.0), 4);
    EXPECT_NEAR(p[0], 1.0, 1e-12);
}

TEST(QaeDistribution, MatchesClosedFormAndDft) {
    const auto o = eq16_ssc();
    const double theta = std::asin(std::sqrt(good_probability(o)));
    for (std::size_t t = 1; t <= 5; ++t) {
        const auto p = qae_outcome_distribution(o, t);
        double total = 0.0;
        for (std::size_t y = 0; y < p.size(); ++y) {
            total += p[y];
            EXPECT_NEAR(p[y], pmf_by_dft(y, t, theta), 1e-10) << t << " " << y;
            EXPECT_NEAR(qpe_outcome_probability(y, t, theta), pmf_by_dft(y, t, theta), 1e-12);
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(QaeDistribution, ProbZeroTargetEstimatesComplement) {
    const auto o = eq16_ssc();
    const double a = good_probability(o);
    const auto p = qae_outcome_distribution(o, 4, Target::PROB_ZERO);
    const double th0 = std::asin(std::sqrt(1.0 - a));
    for (std::size_t y = 0; y < p.size(); ++y) {
        EXPECT_NEAR(p[y], pmf_by_dft(y, 4, th0), 1e-10);
    }
}

TEST(Property, PmfSymmetry) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto o = rotation_oracle(u(rng));
        for (std::size_t t = 1; t <= 6; ++t) {
            const auto p = qae_outcome_distribution(o, t);
            const std::size_t T = p.size();
            for (std::size_t y = 1; y < T; ++y) {
                EXPECT_NEAR(p[y], p[T - y], 1e-10);
            }
        }
    }
}

TEST(Property, CoverageAtLeastEightOverPiSquared) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = u(rng);
        const auto o = rotation_oracle(a);
        for (std::size_t t = 1; t <= 6; ++t) {
            const auto p = qae_outcome_distribution(o, t);
            const double bound = qae_error_bound(a, static_cast<double>(p.size()));
            double mass = 0.0;
            for (std::size_t y = 0; y < p.size(); ++y) {
                mass += std::abs(qae_value(y, t) - a) <= bound ? p[y] : 0.0;
            }
            EXPECT_GE(mass, 8.0 / (kPi * kPi)) << "a=" << a << " t=" << t;
        }
    }
}

// ---------- error bound ----------
TEST(ErrorBound, Examples) {
    EXPECT_NEAR(qae_error_bound(0.6541, 4), 1.364, 1e-3);
    EXPECT_DOUBLE_EQ(qae_error_bound(0.0, 8), kPi * kPi / 64.0);
    EXPECT_NEAR(qae_error_bound(0.5, 1024), 0.003077, 1e-6);
    EXPECT_THROW(qae_error_bound(1.5, 4), InvalidArgument);
    EXPECT_THROW(qae_error_bound(0.5, 0), InvalidArgument);
}

// ---------- MLE post-processing ----------
TEST(Mle, ConcentratedCountsAtRepresentableValue) {
    std::vector<double> w(8, 0.0);
    w[2] = 50;
    w[6] = 50;
    EXPECT_NEAR(mle_postprocess(w, 3), 0.5, 1e-6);
    EXPECT_THROW(mle_postprocess(std::vector<double>(8, 0.0), 3), InvalidArgument);
}

TEST(Mle, BeatsMostFrequentOnHundredShotCounts) {
    const auto o = eq16_ssc();
    const double a = good_probability(o);
    const auto pmf = qae_outcome_distribution(o, 4);
    int better = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        auto rng = make_rng(7, {trial});
        const auto counts = sample_distribution(pmf, 4, 100, rng);
        const double mle = mle_postprocess(counts, 4);
        const double plain = qae_value(most_frequent(counts), 4);
        better += std::abs(mle - a) < std::abs(plain - a) ? 1 : 0;
    }
    EXPECT_GE(better, 60);
}

TEST(Mle, ArgmaxAgreesWithDenseGrid) {
    // counts placing weight on a mirror pair; the dense grid finds the global optimum
    std::vector<double> w(16, 0.0);
    w[3] = 40;
    w[13] = 38;
    w[4] = 12;
    w[12] = 10;
    const double got = mle_postprocess(w, 4);
    double best = -INFINITY, best_th = 0.0;
    for (int i = 0; i <= 100000; ++i) {
        const double th = kPi / 2 * i / 100000.0;
        double ll = 0.0;
        for (std::size_t y = 0; y < w.size(); ++y) {
            if (w[y] > 0) {
                ll += w[y] * std::log(pmf_by_dft(y, 4, th));
            }
        }
        if (ll > best) {
            best = ll;
            best_th = th;
        }
    }
    EXPECT_NEAR(got, std::pow(std::sin(best_th), 2), 1e-4);
}

TEST(Property, MleOnExactPmfNoWorseThanMode) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = u(rng);
        const auto o = rotation_oracle(a);
        for (std::size_t t = 2; t <= 6; ++t) {
            const auto pmf = qae_outcome_distribution(o, t);
            const auto mode = run_qae(o, {t, 1, Target::PROB_ONE}, 0, QaeMode::EXACT);
            EXPECT_LE(std::abs(mle_postprocess(pmf, t) - a), std::abs(mode.a_hat - a) + 1e-9) << a << " " << t;
        }
    }
}

// ---------- MLQAE ----------
TEST(Mlqae, EdgeAmplitudes) {
    MlqaeConfig c;
    EXPECT_NEAR(run_mlqae(rotation_oracle(0.0), c, 1).a_hat, 0.0, 1e-12);
    EXPECT_NEAR(run_mlqae(rotation_oracle(1.0), c, 1).a_hat, 1.0, 1e-12);
}

TEST(Mlqae, QueryAccounting) {
    MlqaeConfig c;
    const auto r = run_mlqae(rotation_oracle(0.3), c, 1);
    EXPECT_EQ(r.queries_per_shot, 35U); // 1 + 3 + 5 + 9 + 17
    EXPECT_EQ(r.total_queries, 3500U);
    EXPECT_EQ(r.hits.size(), 5U);
    EXPECT_EQ(exponential_schedule(4), (std::vector<std::size_t>{0, 1, 2, 4, 8}));
}

TEST(Mlqae, RejectsBadConfig) {
    MlqaeConfig c;
    c.schedule = {2, 1};
    EXPECT_THROW(run_mlqae(rotation_oracle(0.3), c, 1), InvalidArgument);
    c.schedule = {0, 1};
    c.shots_per_round = 0;
    EXPECT_THROW(run_mlqae(rotation_oracle(0.3), c, 1), InvalidArgument);
}

// The bound is taken at the queries of one pass over the schedule (35); see README.
TEST(Mlqae, Eq16PercentileBelowBound) {
    const auto o = eq16_ssc();
    const double a = good_probability(o);
    MlqaeConfig c;
    c.grid_points = 2000;
    std::vector<double> err;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        err.push_back(std::abs(run_mlqae(o, c, seed).a_hat - a));
    }
    const double p81 = percentile_81(err);
    EXPECT_LT(p81, qae_error_bound(a, 35));
    EXPECT_LT(p81, 0.01);
}

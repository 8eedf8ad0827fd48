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
/**
 * @file
 * Error-scaling comparison between amplitude-estimation-assisted and
 * direct-sampling readout of the simplified classifiers, multi-dataset
 * averaging, and the classifier inherent-error study.
 *
 * Every repetition draws from its own RNG stream keyed by
 * (seed, t, arm, repetition), so reports are bitwise reproducible and
 * independent of thread count.
 */
#pragma once

#include "amplitude_estimation.hpp"
#include "classifiers.hpp"
#include "encoding.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sqkc {

enum class Estimator { QAE, QAE_MLE, MLQAE, BASELINE };

inline const char *to_string(Estimator e) {
    switch (e) {
    case Estimator::QAE:
        return "qae";
    case Estimator::QAE_MLE:
        return "qae-mle";
    case Estimator::MLQAE:
        return "mlqae";
    case Estimator::BASELINE:
        return "baseline";
    }
    return "?";
}

/// Shots per estimate used when the config leaves `shots` at 0: one for
/// plain QAE, 100 for the likelihood-based estimators.
constexpr std::size_t default_shots(Estimator e) {
    return e == Estimator::QAE_MLE || e == Estimator::MLQAE ? 100 : 1;
}

/// The SHC/SSC circuit as an amplitude-estimation oracle; the good qubit is
/// the ancilla.
inline StatePrepOracle sqkc_oracle(const LabeledDataset &data, Flavor flavor, Target target = Target::PROB_ONE) {
    detail::require(is_simplified(flavor), "amplitude estimation runs on SHC or SSC");
    require_flavor_compatible(data, flavor);
    const auto enc = encode_class_ordered(data);
    const auto layout = sqkc_layout(enc, flavor);
    return {sqkc_circuit(enc, flavor), layout.n_qubits, layout.ancilla, target};
}

struct ComparisonConfig {
    Flavor flavor = Flavor::SSC;
    std::vector<std::size_t> t_range{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::size_t repetitions = 2000;
    std::uint64_t seed = 42;
    Estimator estimator = Estimator::QAE;
    LabeledDataset dataset;
    std::string dataset_id = "custom";
    Target target = Target::PROB_ONE;
    std::size_t shots = 0; ///< shots per estimate; 0 picks default_shots(estimator)
    std::size_t grid_points = tol::kDefaultGridPoints;
    unsigned threads = 0;
};

inline std::vector<std::size_t> t_span(std::size_t first, std::size_t last) {
    detail::require(first >= 1 && first <= last, "t range must satisfy 1 <= first <= last");
    std::vector<std::size_t> v;
    for (std::size_t t = first; t <= last; ++t) {
        v.push_back(t);
    }
    return v;
}

inline void validate(const ComparisonConfig &c) {
    detail::require(!c.t_range.empty(), "t_range is empty");
    detail::require(std::is_sorted(c.t_range.begin(), c.t_range.end()) &&
                        std::adjacent_find(c.t_range.begin(), c.t_range.end()) == c.t_range.end(),
                    "t_range must be strictly ascending");
    detail::require(c.t_range.front() >= 1, "t must be >= 1");
    detail::require(c.repetitions >= 100, "repetitions must be >= 100");
    detail::require(c.grid_points >= 2, "grid_points must be >= 2");
}

struct ErrorCurveEntry {
    std::size_t t = 0;
    double samples = 0.0;             ///< 2^{t+1} * shots
    double queries = 0.0;             ///< calls to A or A^dagger actually spent per estimate
    double err_p81 = 0.0;
    double err_min = 0.0;
    double bound = 0.0;               ///< error bound at N_q = 2^t
    double within_bound_fraction = 0.0;
};

struct ErrorCurve {
    std::vector<ErrorCurveEntry> entries;

    [[nodiscard]] std::vector<std::pair<double, double>> p81_points() const {
        std::vector<std::pair<double, double>> p;
        for (const auto &e : entries) {
            p.emplace_back(e.samples, e.err_p81);
        }
        return p;
    }
};

struct ReportMetadata {
    std::uint64_t seed = 0;
    std::string dataset_id;
    Flavor flavor = Flavor::SSC;
    Estimator estimator = Estimator::QAE;
    Target target = Target::PROB_ONE;
    double true_a = 0.0;
    std::size_t repetitions = 0;
    std::size_t shots = 0;
    std::size_t reports_averaged = 1;
};

struct ExperimentReport {
    ErrorCurve estimator_curve; ///< QAE / QAE-MLE / MLQAE arm
    ErrorCurve baseline_curve;  ///< direct sampling with the same sample budget
    FitResult estimator_fit;
    FitResult baseline_fit;
    double slope_ratio = std::numeric_limits<double>::quiet_NaN();
    ReportMetadata meta;

    [[nodiscard]] bool degenerate() const { return estimator_fit.degenerate || baseline_fit.degenerate; }
};

namespace detail {

enum Arm : std::uint64_t { kEstimatorArm = 1, kBaselineArm = 2 };

inline void refit(ExperimentReport &r) {
    const auto ep = r.estimator_curve.p81_points();
    const auto bp = r.baseline_curve.p81_points();
    r.estimator_fit = fit_log2(ep);
    r.baseline_fit = fit_log2(bp);
    r.slope_ratio = r.degenerate() ? std::numeric_limits<double>::quiet_NaN()
                                   : r.estimator_fit.slope / r.baseline_fit.slope;
}

inline ErrorCurveEntry summarize(std::size_t t, double samples, double a, const std::vector<double> &errors) {
    ErrorCurveEntry e;
    e.t = t;
    e.samples = samples;
    e.err_p81 = percentile_81(errors);
    e.err_min = *std::min_element(errors.begin(), errors.end());
    e.bound = qae_error_bound(a, static_cast<double>(std::uint64_t{1} << t));
    std::size_t within = 0;
    for (double x : errors) {
        within += x <= e.bound ? 1 : 0;
    }
    e.within_bound_fraction = static_cast<double>(within) / static_cast<double>(errors.size());
    return e;
}

/// Frequency estimate of `a` from `shots` Bernoulli draws.
inline double frequency_estimate(double a, std::uint64_t shots, Rng &rng) {
    std::binomial_distribution<std::uint64_t> dist(shots, a);
    return static_cast<double>(dist(rng)) / static_cast<double>(shots);
}

/// Grid tables of log sin^2 and log cos^2 of (2m+1) theta per round.
class MlqaeTables {
  public:
    MlqaeTables(std::vector<std::size_t> schedule, std::size_t grid_points)
        : schedule_(std::move(schedule)), grid_points_(grid_points) {
        const double step = std::numbers::pi / 2.0 / static_cast<double>(grid_points - 1);
        for (auto m : schedule_) {
            std::vector<double> ls(grid_points), lc(grid_points);
            for (std::size_t i = 0; i < grid_points; ++i) {
                const double ang = (2.0 * static_cast<double>(m) + 1.0) * static_cast<double>(i) * step;
                const double p = std::sin(ang) * std::sin(ang);
                ls[i] = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
                lc[i] = p < 1.0 ? std::log1p(-p) : -std::numeric_limits<double>::infinity();
            }
            log_sin2_.push_back(std::move(ls));
            log_cos2_.push_back(std::move(lc));
        }
    }

    [[nodiscard]] double argmax(const std::vector<std::size_t> &hits, std::size_t shots) const {
        std::vector<double> grid(grid_points_, 0.0);
        for (std::size_t k = 0; k < schedule_.size(); ++k) {
            const auto h = static_cast<double>(hits[k]);
            const auto miss = static_cast<double>(shots - hits[k]);
            for (std::size_t i = 0; i < grid_points_; ++i) {
                if (h > 0.0) {
                    grid[i] += h * log_sin2_[k][i];
                }
                if (miss > 0.0) {
                    grid[i] += miss * log_cos2_[k][i];
                }
            }
        }
        auto loglik = [&](double th) {
            double s = 0.0;
            for (std::size_t k = 0; k < schedule_.size(); ++k) {
                const double ang = (2.0 * static_cast<double>(schedule_[k]) + 1.0) * th;
                const double p = std::sin(ang) * std::sin(ang);
                const auto h = static_cast<double>(hits[k]);
                const auto miss = static_cast<double>(shots - hits[k]);
                if (h > 0.0) {
                    s += h * (p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity());
                }
                if (miss > 0.0) {
                    s += miss * (p < 1.0 ? std::log1p(-p) : -std::numeric_limits<double>::infinity());
                }
            }
            return s;
        };
        return maximize_on_quarter_circle(loglik, grid_points_, &grid);
    }

  private:
    std::vector<std::size_t> schedule_;
    std::size_t grid_points_;
    std::vector<std::vector<double>> log_sin2_;
    std::vector<std::vector<double>> log_cos2_;
};

/// QAE: A once plus A and A^dagger per Q, 2^t - 1 Q's; MLQAE: sum_k (2 m_k + 1).
inline double queries_per_estimate(Estimator e, std::size_t t, std::size_t shots) {
    const auto s = static_cast<double>(shots);
    switch (e) {
    case Estimator::QAE:
    case Estimator::QAE_MLE:
        return static_cast<double>((std::uint64_t{2} << t) - 1) * s;
    case Estimator::MLQAE: {
        const auto sched = exponential_schedule(t);
        return static_cast<double>(mlqae_queries_per_shot(sched)) * s;
    }
    case Estimator::BASELINE:
        break;
    }
    return static_cast<double>(std::uint64_t{2} << t) * s;
}

/// Estimator-arm errors |a - a~_i| for one t.
inline std::vector<double> estimator_errors(const ComparisonConfig &c, const StatePrepOracle &oracle, double a,
                                            std::size_t t, std::size_t shots) {
    const std::size_t reps = c.repetitions;
    std::vector<double> errors(reps);
    auto rng_for = [&](std::size_t i) { return make_rng(c.seed, {t, kEstimatorArm, i}); };

    switch (c.estimator) {
    case Estimator::QAE: {
        const auto pmf = qae_outcome_distribution(oracle, t);
        parallel_for(
            reps,
            [&](std::size_t i) {
                auto rng = rng_for(i);
                errors[i] = abs_error(a, qae_from_distribution(pmf, t, shots, rng).a_hat);
            },
            c.threads);
        break;
    }
    case Estimator::QAE_MLE: {
        const auto pmf = qae_outcome_distribution(oracle, t);
        std::vector<std::vector<std::pair<std::uint64_t, double>>> counts(reps);
        parallel_for(
            reps,
            [&](std::size_t i) {
                auto rng = rng_for(i);
                const auto sc = sample_distribution(pmf, t, shots, rng);
                for (const auto &[y, n] : sc.counts) {
                    counts[i].emplace_back(y, static_cast<double>(n));
                }
            },
            c.threads);
        std::set<std::uint64_t> seen;
        for (const auto &w : counts) {
            for (const auto &[y, n] : w) {
                seen.insert(y);
            }
        }
        QpeLikelihood lik(t, c.grid_points);
        const std::vector<std::uint64_t> ys(seen.begin(), seen.end());
        lik.prepare(ys);
        parallel_for(
            reps,
            [&](std::size_t i) {
                const double th = lik.argmax(counts[i]);
                errors[i] = abs_error(a, std::sin(th) * std::sin(th));
            },
            c.threads);
        break;
    }
    case Estimator::MLQAE: {
        const auto schedule = exponential_schedule(t);
        std::vector<double> round_prob;
        {
            const Circuit q = build_grover(oracle);
            StateVector s = prepare(oracle);
            std::size_t applied = 0;
            for (auto m : schedule) {
                for (; applied < m; ++applied) {
                    run(s, q);
                }
                round_prob.push_back(good_probability(s, oracle));
            }
        }
        const MlqaeTables tables(schedule, c.grid_points);
        parallel_for(
            reps,
            [&](std::size_t i) {
                auto rng = rng_for(i);
                std::vector<std::size_t> hits;
                for (double p : round_prob) {
                    std::binomial_distribution<std::size_t> dist(shots, std::clamp(p, 0.0, 1.0));
                    hits.push_back(dist(rng));
                }
                const double th = tables.argmax(hits, shots);
                errors[i] = abs_error(a, std::sin(th) * std::sin(th));
            },
            c.threads);
        break;
    }
    case Estimator::BASELINE: {
        const std::uint64_t n = (std::uint64_t{1} << (t + 1)) * shots;
        parallel_for(
            reps,
            [&](std::size_t i) {
                auto rng = rng_for(i);
                errors[i] = abs_error(a, frequency_estimate(a, n, rng));
            },
            c.threads);
        break;
    }
    }
    return errors;
}

} // namespace detail

/// Runs both arms of the comparison for every t in the config.
///
/// The estimator arm spends 2^{t+1} * shots calls to A per estimate; the
/// baseline arm reads the classifier ancilla directly with that many shots
/// and estimates the target probability by frequency.
inline ExperimentReport run_comparison(const ComparisonConfig &config) {
    validate(config);
    const auto oracle = sqkc_oracle(config.dataset, config.flavor, config.target);
    for (auto t : config.t_range) {
        if (config.estimator == Estimator::QAE || config.estimator == Estimator::QAE_MLE) {
            detail::require_capacity(oracle, t);
        }
    }
    const double a = good_probability(oracle);
    const std::size_t shots = config.shots == 0 ? default_shots(config.estimator) : config.shots;

    ExperimentReport r;
    r.meta = {config.seed, config.dataset_id, config.flavor, config.estimator, config.target,
              a,           config.repetitions, shots, 1};
    for (auto t : config.t_range) {
        const double samples = static_cast<double>((std::uint64_t{1} << (t + 1)) * shots);
        r.estimator_curve.entries.push_back(
            detail::summarize(t, samples, a, detail::estimator_errors(config, oracle, a, t, shots)));
        r.estimator_curve.entries.back().queries = detail::queries_per_estimate(config.estimator, t, shots);

        const auto n = static_cast<std::uint64_t>(samples);
        std::vector<double> base(config.repetitions);
        parallel_for(
            config.repetitions,
            [&](std::size_t i) {
                auto rng = make_rng(config.seed, {t, detail::kBaselineArm, i});
                base[i] = abs_error(a, detail::frequency_estimate(a, n, rng));
            },
            config.threads);
        r.baseline_curve.entries.push_back(detail::summarize(t, samples, a, base));
        r.baseline_curve.entries.back().queries = samples;
    }
    detail::refit(r);
    return r;
}

/// Pointwise arithmetic mean of several reports on the same sample axis;
/// fits are recomputed on the averaged curves.
inline ExperimentReport average_reports(std::span<const ExperimentReport> reports) {
    if (reports.empty()) {
        throw InvalidArgument("average_reports needs at least one report");
    }
    ExperimentReport out = reports.front();
    const auto &axis = reports.front().estimator_curve.entries;
    for (const auto &r : reports) {
        if (r.estimator_curve.entries.size() != axis.size() || r.baseline_curve.entries.size() != axis.size()) {
            throw InvalidArgument("average_reports: reports have different sample axes");
        }
        for (std::size_t k = 0; k < axis.size(); ++k) {
            if (r.estimator_curve.entries[k].t != axis[k].t ||
                r.estimator_curve.entries[k].samples != axis[k].samples ||
                r.baseline_curve.entries[k].samples != axis[k].samples) {
                throw InvalidArgument("average_reports: reports have different sample axes");
            }
        }
    }
    const auto n = static_cast<double>(reports.size());
    auto mean_curve = [&](auto pick) {
        ErrorCurve c = pick(reports.front());
        for (std::size_t k = 0; k < c.entries.size(); ++k) {
            ErrorCurveEntry acc = c.entries[k];
            acc.err_p81 = acc.err_min = acc.bound = acc.within_bound_fraction = 0.0;
            for (const auto &r : reports) {
                const auto &e = pick(r).entries[k];
                acc.err_p81 += e.err_p81;
                acc.err_min += e.err_min;
                acc.bound += e.bound;
                acc.within_bound_fraction += e.within_bound_fraction;
            }
            acc.err_p81 /= n;
            acc.err_min /= n;
            acc.bound /= n;
            acc.within_bound_fraction /= n;
            c.entries[k] = acc;
        }
        return c;
    };
    out.estimator_curve = mean_curve([](const ExperimentReport &r) -> const ErrorCurve & { return r.estimator_curve; });
    out.baseline_curve = mean_curve([](const ExperimentReport &r) -> const ErrorCurve & { return r.baseline_curve; });
    if (reports.size() > 1) {
        double a = 0.0;
        for (const auto &r : reports) {
            a += r.meta.true_a;
        }
        out.meta.true_a = a / n;
        out.meta.dataset_id = "average of " + std::to_string(reports.size());
        out.meta.reports_averaged = reports.size();
    }
    detail::refit(out);
    return out;
}

/// Labeled feature pool for the inherent-error study.
struct LabeledPool {
    std::vector<FeatureVector> features;
    std::vector<int> labels;
};

struct InherentErrorConfig {
    Flavor flavor = Flavor::SSC;
    std::vector<std::size_t> train_counts{2, 4, 8};
    std::size_t iterations = 100000;
    std::uint64_t seed = 42;
    std::size_t record_after = 1000; ///< first iteration count that is not recorded
    std::size_t record_every = 10;
    unsigned threads = 0;
};

struct ErrorTrajectory {
    std::size_t train_count = 0;
    std::vector<std::pair<std::size_t, double>> points; ///< (iteration, cumulative error rate)
    double final_rate = 0.0;
};

namespace detail {
inline std::size_t uniform_index(Rng &rng, std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

/// Picks `k` distinct entries of `from` (partial Fisher-Yates on a copy).
inline std::vector<std::size_t> pick_distinct(std::vector<std::size_t> from, std::size_t k, Rng &rng) {
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_index(rng, from.size() - i);
        std::swap(from[i], from[j]);
    }
    from.resize(k);
    return from;
}
} // namespace detail

/// Misclassification rate of the exact classifier over random balanced
/// training draws. Each iteration picks M/2 samples per class and a test
/// point from the remaining pool, classifies by the sign of the exact
/// score, and the cumulative error rate is recorded every `record_every`
/// iterations once `record_after` iterations have passed.
inline std::vector<ErrorTrajectory> inherent_error_study(const LabeledPool &pool, const InherentErrorConfig &config) {
    detail::require(pool.features.size() == pool.labels.size(), "pool features and labels differ in length");
    detail::require(!config.train_counts.empty(), "no training sizes given");
    detail::require(config.record_every >= 1, "record_every must be >= 1");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < pool.labels.size(); ++i) {
        detail::require(pool.labels[i] == 0 || pool.labels[i] == 1, "pool labels must be 0 or 1");
        by_class[pool.labels[i]].push_back(i);
    }
    for (auto m : config.train_counts) {
        detail::require(m >= 2 && m % 2 == 0, "training sizes must be even (pairs)");
        if (by_class[0].size() < m / 2 || by_class[1].size() < m / 2 || pool.labels.size() < m + 1) {
            throw InvalidArgument("pool too small for " + std::to_string(m) + " training samples plus a test point");
        }
    }

    std::vector<ErrorTrajectory> out;
    for (auto m : config.train_counts) {
        std::vector<unsigned char> wrong(config.iterations, 0);
        parallel_for(
            config.iterations,
            [&](std::size_t it) {
                auto rng = make_rng(config.seed, {m, it});
                const auto c0 = detail::pick_distinct(by_class[0], m / 2, rng);
                const auto c1 = detail::pick_distinct(by_class[1], m / 2, rng);
                std::vector<bool> used(pool.labels.size(), false);
                LabeledDataset d;
                for (const auto *cls : {&c0, &c1}) {
                    for (auto i : *cls) {
                        used[i] = true;
                        d.train_features.push_back(pool.features[i]);
                        d.labels.push_back(pool.labels[i]);
                    }
                }
                d.weights.assign(m, 1.0 / static_cast<double>(m));
                std::size_t test = 0;
                std::size_t skip = detail::uniform_index(rng, pool.labels.size() - m);
                for (std::size_t i = 0; i < used.size(); ++i) {
                    if (used[i]) {
                        continue;
                    }
                    if (skip-- == 0) {
                        test = i;
                        break;
                    }
                }
                d.test_features = pool.features[test];
                wrong[it] = classify(d, config.flavor).predicted_label != pool.labels[test] ? 1 : 0;
            },
            config.threads);

        ErrorTrajectory tr;
        tr.train_count = m;
        std::size_t errors = 0;
        for (std::size_t it = 0; it < config.iterations; ++it) {
            errors += wrong[it];
            const std::size_t done = it + 1;
            if (done > config.record_after && done % config.record_every == 0) {
                tr.points.emplace_back(done, static_cast<double>(errors) / static_cast<double>(done));
            }
        }
        tr.final_rate = config.iterations ? static_cast<double>(errors) / static_cast<double>(config.iterations) : 0.0;
        out.push_back(std::move(tr));
    }
    return out;
}

} // namespace sqkc

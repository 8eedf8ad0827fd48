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
 * Amplitude estimation over an arbitrary state-preparation circuit A:
 * Grover operator, phase-estimation QAE (sampled and exact), the textbook
 * error bound, maximum-likelihood post-processing of QAE outcomes, and
 * maximum-likelihood amplitude estimation (MLQAE) without phase estimation.
 */
#pragma once

#include "errors.hpp"
#include "gates.hpp"
#include "rng.hpp"
#include "state_vector.hpp"
#include "tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sqkc {

/// Which outcome of the good qubit is amplified and estimated.
enum class Target { PROB_ONE, PROB_ZERO };

inline const char *to_string(Target t) { return t == Target::PROB_ONE ? "prob_one" : "prob_zero"; }

/// A acting on `n_qubits` qubits; `good_qubit` reading the target value marks
/// the good subspace.
struct StatePrepOracle {
    Circuit circuit;
    std::size_t n_qubits = 1;
    std::size_t good_qubit = 0;
    Target target = Target::PROB_ONE;
};

inline void validate(const StatePrepOracle &oracle) {
    if (oracle.n_qubits < 1 || oracle.n_qubits > tol::kMaxQubits) {
        throw CapacityError("oracle register of " + std::to_string(oracle.n_qubits) + " qubits is out of range");
    }
    detail::require(oracle.good_qubit < oracle.n_qubits, "good_qubit out of range");
    for (const auto &g : oracle.circuit) {
        validate(g, oracle.n_qubits);
    }
}

/// Oracle whose good-state probability is exactly `a`: RY(2 asin(sqrt a)) on
/// one qubit.
inline StatePrepOracle rotation_oracle(double a) {
    detail::require(a >= 0.0 && a <= 1.0, "a must lie in [0, 1]");
    return {{gates::ry(0, 2.0 * std::asin(std::sqrt(a)))}, 1, 0, Target::PROB_ONE};
}

inline StateVector prepare(const StatePrepOracle &oracle) {
    StateVector s(oracle.n_qubits);
    run(s, oracle.circuit);
    return s;
}

inline double good_probability(const StateVector &s, const StatePrepOracle &oracle) {
    return probability(s, oracle.good_qubit, oracle.target == Target::PROB_ONE ? 1 : 0);
}

/// Exact a = Pr(good) of A|0>.
inline double good_probability(const StatePrepOracle &oracle) {
    validate(oracle);
    return good_probability(prepare(oracle), oracle);
}

/// One Grover iterate Q = -A S_0 A^dagger S_good as a gate list.
///
/// S_good is Z on the good qubit (X Z X when the target is |0>); S_0 is a
/// multi-controlled Z between X layers. The closing -I fixes the global sign
/// so that Q has eigenphases +-2 theta, which matters once Q is controlled.
inline Circuit build_grover(const StatePrepOracle &oracle) {
    validate(oracle);
    const std::size_t l = oracle.n_qubits;
    Circuit q;
    if (oracle.target == Target::PROB_ONE) {
        q.push_back(gates::z(oracle.good_qubit));
    } else {
        q.push_back(gates::x(oracle.good_qubit));
        q.push_back(gates::z(oracle.good_qubit));
        q.push_back(gates::x(oracle.good_qubit));
    }
    append(q, inverse(oracle.circuit));
    for (std::size_t i = 0; i < l; ++i) {
        q.push_back(gates::x(i));
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = 1; i < l; ++i) {
        rest.push_back(i);
    }
    q.push_back(gates::mcz(0, rest));
    for (std::size_t i = 0; i < l; ++i) {
        q.push_back(gates::x(i));
    }
    append(q, oracle.circuit);
    q.push_back(gates::unitary(Matrix(2, {-1.0, 0.0, 0.0, -1.0}), {0}));
    return q;
}

/// A|0> followed by `power` Grover iterates.
inline StateVector amplified_state(const StatePrepOracle &oracle, std::size_t power) {
    StateVector s = prepare(oracle);
    const Circuit q = build_grover(oracle);
    for (std::size_t k = 0; k < power; ++k) {
        run(s, q);
    }
    return s;
}

struct QaeConfig {
    std::size_t t = 3;
    std::size_t shots = 1;
    Target target = Target::PROB_ONE;
};

struct QaeEstimate {
    std::uint64_t y = 0;
    double a_hat = 0.0;
    double theta_hat = 0.0;
    std::uint64_t n_queries = 0;    ///< Grover applications N_q = 2^t
    std::uint64_t samples_used = 0; ///< 2^{t+1} * shots calls to A or A^dagger
    std::vector<double> pmf;        ///< filled in exact mode only
};

/// a~ = sin^2(pi y / 2^t).
inline double qae_value(std::uint64_t y, std::size_t t) {
    const double th = std::numbers::pi * static_cast<double>(y) / static_cast<double>(std::uint64_t{1} << t);
    const double s = std::sin(th);
    return s * s;
}

inline QaeEstimate estimate_from_outcome(std::uint64_t y, std::size_t t, std::size_t shots) {
    QaeEstimate e;
    e.y = y;
    e.theta_hat = std::numbers::pi * static_cast<double>(y) / static_cast<double>(std::uint64_t{1} << t);
    e.a_hat = qae_value(y, t);
    e.n_queries = std::uint64_t{1} << t;
    e.samples_used = (std::uint64_t{1} << (t + 1)) * shots;
    return e;
}

/// Most frequent outcome; ties go to the smallest y.
inline std::uint64_t most_frequent(const ShotCounts &counts) {
    detail::require(!counts.counts.empty(), "no shots recorded");
    std::uint64_t best = 0;
    std::size_t best_count = 0;
    for (const auto &[y, c] : counts.counts) { // map: ascending y
        if (c > best_count) {
            best = y;
            best_count = c;
        }
    }
    return best;
}

namespace detail {
inline StatePrepOracle with_target(StatePrepOracle o, Target t) {
    o.target = t;
    return o;
}

inline void require_capacity(const StatePrepOracle &oracle, std::size_t t) {
    detail::require(t >= 1, "t must be >= 1");
    if (oracle.n_qubits + t > tol::kMaxQubits) {
        throw CapacityError("QAE needs " + std::to_string(oracle.n_qubits + t) + " qubits; cap is " +
                            std::to_string(tol::kMaxQubits));
    }
}
} // namespace detail

/// Full QPE-over-Q circuit on oracle.n_qubits + t qubits. The counting
/// register is qubits [l, l + t), qubit l + j controls Q^{2^j}.
inline Circuit qae_circuit(const StatePrepOracle &oracle, std::size_t t) {
    detail::require_capacity(oracle, t);
    const std::size_t l = oracle.n_qubits;
    const Circuit q = build_grover(oracle);
    Circuit c = oracle.circuit;
    std::vector<std::size_t> counting;
    for (std::size_t j = 0; j < t; ++j) {
        counting.push_back(l + j);
        c.push_back(gates::h(l + j));
    }
    for (std::size_t j = 0; j < t; ++j) {
        const Circuit cq = controlled(q, l + j);
        for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << j); ++rep) {
            append(c, cq);
        }
    }
    c.push_back(gates::qft_inverse(counting));
    return c;
}

/// Exact measurement distribution of the counting register, from the full
/// statevector.
inline std::vector<double> qae_outcome_distribution(const StatePrepOracle &oracle, std::size_t t) {
    validate(oracle);
    detail::require_capacity(oracle, t);
    const std::size_t l = oracle.n_qubits;
    StateVector s(l + t);
    // A and the Hadamards first, then controlled powers applied gate by gate
    run(s, qae_circuit(oracle, t));
    std::vector<std::size_t> counting(t);
    std::iota(counting.begin(), counting.end(), l);
    return marginal_distribution(s, counting);
}

inline std::vector<double> qae_outcome_distribution(const StatePrepOracle &oracle, std::size_t t, Target target) {
    return qae_outcome_distribution(detail::with_target(oracle, target), t);
}

/// Samples a precomputed outcome distribution `shots` times and returns the
/// most-frequent-outcome estimate.
inline QaeEstimate qae_from_distribution(std::span<const double> pmf, std::size_t t, std::size_t shots, Rng &rng) {
    const auto counts = sample_distribution(pmf, t, shots, rng);
    return estimate_from_outcome(most_frequent(counts), t, shots);
}

enum class QaeMode { SAMPLED, EXACT };

/// Phase-estimation amplitude estimation.
///
/// SAMPLED draws `config.shots` outcomes of the counting register and keeps
/// the most frequent; EXACT skips sampling, reports the whole pmf and uses
/// its mode.
inline QaeEstimate run_qae(const StatePrepOracle &oracle, const QaeConfig &config, std::uint64_t rng_seed,
                           QaeMode mode = QaeMode::SAMPLED) {
    detail::require(config.shots >= 1, "shots must be >= 1");
    const auto pmf = qae_outcome_distribution(detail::with_target(oracle, config.target), config.t);
    if (mode == QaeMode::EXACT) {
        const auto it = std::max_element(pmf.begin(), pmf.end()); // first maximum = smallest y
        auto e = estimate_from_outcome(static_cast<std::uint64_t>(it - pmf.begin()), config.t, config.shots);
        e.pmf = pmf;
        return e;
    }
    auto rng = make_rng(rng_seed);
    return qae_from_distribution(pmf, config.t, config.shots, rng);
}

/// |a - a~| bound holding with probability >= 8/pi^2.
inline double qae_error_bound(double a, double n_queries) {
    detail::require(a >= 0.0 && a <= 1.0, "a must lie in [0, 1]");
    detail::require(n_queries >= 1.0, "n_queries must be >= 1");
    constexpr double pi = std::numbers::pi;
    return 2.0 * std::sqrt(a * (1.0 - a)) * pi / n_queries + pi * pi / (n_queries * n_queries);
}

/// Probability of counting-register outcome y for true angle theta, in
/// closed form: the state splits evenly over the eigenphases +-theta/pi and
/// each contributes a Fejer kernel.
inline double qpe_outcome_probability(std::uint64_t y, std::size_t t, double theta) {
    const double T = static_cast<double>(std::uint64_t{1} << t);
    auto fejer = [T](double delta) {
        delta -= std::round(delta);
        const double den = std::sin(std::numbers::pi * delta);
        if (std::abs(den) < 1e-13) {
            return 1.0;
        }
        const double num = std::sin(std::numbers::pi * T * delta);
        return (num * num) / (T * T * den * den);
    };
    const double phase = theta / std::numbers::pi;
    const double yt = static_cast<double>(y) / T;
    return 0.5 * (fejer(yt - phase) + fejer(yt + phase));
}

/// Argmax over theta in [0, pi/2]: a uniform grid, then golden-section
/// refinement around the best few local maxima of the grid. Near exactly
/// representable phases the likelihood has twin needle peaks whose heights
/// differ by less than the grid's discretization error, so refining only
/// the single best grid point can pick the wrong one.
inline double maximize_on_quarter_circle(const std::function<double(double)> &loglik, std::size_t grid_points,
                                         const std::vector<double> *grid_values = nullptr) {
    detail::require(grid_points >= 2, "grid_points must be >= 2");
    constexpr std::size_t kCandidates = 8;
    const double hi = std::numbers::pi / 2.0;
    const double step = hi / static_cast<double>(grid_points - 1);
    std::vector<double> v(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        v[i] = grid_values ? (*grid_values)[i] : loglik(static_cast<double>(i) * step);
    }
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const bool left = i == 0 || v[i] >= v[i - 1];
        const bool right = i + 1 == grid_points || v[i] > v[i + 1];
        if (left && right && v[i] > -std::numeric_limits<double>::infinity()) {
            peaks.push_back(i);
        }
    }
    if (peaks.empty()) {
        peaks.push_back(static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin()));
    }
    const std::size_t keep = std::min(kCandidates, peaks.size());
    std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(),
                      [&](std::size_t a, std::size_t b) { return v[a] > v[b] || (v[a] == v[b] && a < b); });
    peaks.resize(keep);

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double best_theta = static_cast<double>(peaks.front()) * step;
    double best_val = v[peaks.front()];
    for (auto i : peaks) {
        double lo = std::max(0.0, (static_cast<double>(i) - 1.0) * step);
        double up = std::min(hi, (static_cast<double>(i) + 1.0) * step);
        double c = up - gr * (up - lo);
        double d = lo + gr * (up - lo);
        double fc = loglik(c);
        double fd = loglik(d);
        while (up - lo > tol::kGoldenTol) {
            if (fc >= fd) {
                up = d;
                d = c;
                fd = fc;
                c = up - gr * (up - lo);
                fc = loglik(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + gr * (up - lo);
                fd = loglik(d);
            }
        }
        const double mid = 0.5 * (lo + up);
        const double fm = loglik(mid);
        if (fm > best_val) {
            best_val = fm;
            best_theta = mid;
        }
    }
    return best_theta;
}

/// Log-likelihood of QAE outcome counts, with grid columns cached per
/// outcome so many count vectors can share one table.
class QpeLikelihood {
  public:
    QpeLikelihood(std::size_t t, std::size_t grid_points = tol::kDefaultGridPoints)
        : t_(t), grid_points_(grid_points) {
        detail::require(t >= 1 && t < 31, "t must lie in [1, 30]");
        detail::require(grid_points >= 2, "grid_points must be >= 2");
    }

    [[nodiscard]] std::size_t t() const noexcept { return t_; }
    [[nodiscard]] std::size_t grid_points() const noexcept { return grid_points_; }

    [[nodiscard]] double theta_at(std::size_t i) const {
        return std::numbers::pi / 2.0 * static_cast<double>(i) / static_cast<double>(grid_points_ - 1);
    }

    /// Tabulates log Pr(y | theta_i) for every y in `ys` not yet cached.
    /// Not thread-safe; call before sharing the object across threads.
    void prepare(std::span<const std::uint64_t> ys) {
        for (auto y : ys) {
            if (columns_.count(y)) {
                continue;
            }
            std::vector<double> col(grid_points_);
            for (std::size_t i = 0; i < grid_points_; ++i) {
                col[i] = safe_log(qpe_outcome_probability(y, t_, theta_at(i)));
            }
            columns_.emplace(y, std::move(col));
        }
    }

    [[nodiscard]] double loglik(std::span<const std::pair<std::uint64_t, double>> weights, double theta) const {
        double s = 0.0;
        for (const auto &[y, w] : weights) {
            if (w > 0.0) {
                s += w * safe_log(qpe_outcome_probability(y, t_, theta));
            }
        }
        return s;
    }

    /// theta maximizing the likelihood of `weights` (outcome, count) pairs.
    /// Every outcome must have been prepare()d.
    [[nodiscard]] double argmax(std::span<const std::pair<std::uint64_t, double>> weights) const {
        std::vector<double> grid(grid_points_, 0.0);
        for (const auto &[y, w] : weights) {
            if (w <= 0.0) {
                continue;
            }
            const auto &col = columns_.at(y);
            for (std::size_t i = 0; i < grid_points_; ++i) {
                grid[i] += w * col[i];
            }
        }
        return maximize_on_quarter_circle([&](double th) { return loglik(weights, th); }, grid_points_, &grid);
    }

  private:
    static double safe_log(double p) {
        return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    }

    std::size_t t_;
    std::size_t grid_points_;
    std::unordered_map<std::uint64_t, std::vector<double>> columns_;
};

/// Continuous estimate from QAE outcome weights (shot counts or an exact
/// pmf indexed by y): maximizes prod_y Pr(y | theta)^{w_y} over theta.
inline double mle_postprocess(std::span<const double> weights_by_y, std::size_t t,
                              std::size_t grid_points = tol::kDefaultGridPoints) {
    detail::require(weights_by_y.size() == (std::size_t{1} << t), "weights must cover all 2^t outcomes");
    std::vector<std::pair<std::uint64_t, double>> w;
    std::vector<std::uint64_t> ys;
    for (std::size_t y = 0; y < weights_by_y.size(); ++y) {
        if (weights_by_y[y] < 0.0) {
            throw InvalidArgument("negative outcome weight");
        }
        if (weights_by_y[y] > 0.0) {
            w.emplace_back(y, weights_by_y[y]);
            ys.push_back(y);
        }
    }
    if (w.empty()) {
        throw InvalidArgument("mle_postprocess: all counts are zero");
    }
    QpeLikelihood lik(t, grid_points);
    lik.prepare(ys);
    const double th = lik.argmax(w);
    const double s = std::sin(th);
    return s * s;
}

inline double mle_postprocess(const ShotCounts &counts, std::size_t t,
                              std::size_t grid_points = tol::kDefaultGridPoints) {
    detail::require(counts.bit_width == t, "counts bit width must equal t");
    std::vector<double> w(std::size_t{1} << t, 0.0);
    for (const auto &[y, c] : counts.counts) {
        detail::require(y < w.size(), "outcome out of range");
        w[y] += static_cast<double>(c);
    }
    return mle_postprocess(w, t, grid_points);
}

struct MlqaeConfig {
    std::vector<std::size_t> schedule{0, 1, 2, 4, 8};
    std::size_t shots_per_round = 100;
    std::size_t grid_points = tol::kDefaultGridPoints;
};

/// {0, 1, 2, 4, ..., 2^{k-1}}.
inline std::vector<std::size_t> exponential_schedule(std::size_t k) {
    std::vector<std::size_t> s{0};
    for (std::size_t j = 0; j < k; ++j) {
        s.push_back(std::size_t{1} << j);
    }
    return s;
}

inline void validate(const MlqaeConfig &c) {
    detail::require(!c.schedule.empty(), "MLQAE schedule is empty");
    detail::require(std::is_sorted(c.schedule.begin(), c.schedule.end()), "MLQAE schedule must be nondecreasing");
    detail::require(c.shots_per_round >= 1, "shots_per_round must be >= 1");
    detail::require(c.grid_points >= 2, "grid_points must be >= 2");
}

/// Calls to A or A^dagger in one pass over the schedule: sum_k (2 m_k + 1).
inline std::uint64_t mlqae_queries_per_shot(std::span<const std::size_t> schedule) {
    std::uint64_t n = 0;
    for (auto m : schedule) {
        n += 2 * static_cast<std::uint64_t>(m) + 1;
    }
    return n;
}

struct MlqaeResult {
    double a_hat = 0.0;
    double theta_hat = 0.0;
    std::vector<std::size_t> hits;     ///< h_k, good outcomes per round
    std::uint64_t queries_per_shot = 0; ///< sum_k (2 m_k + 1)
    std::uint64_t total_queries = 0;    ///< queries_per_shot * shots_per_round
};

/// theta maximizing prod_k sin^2((2m_k+1)theta)^{h_k} cos^2((2m_k+1)theta)^{N-h_k}.
inline double mlqae_argmax(std::span<const std::size_t> schedule, std::span<const std::size_t> hits,
                           std::size_t shots, std::size_t grid_points) {
    detail::require(schedule.size() == hits.size(), "one hit count per schedule entry");
    auto loglik = [&](double th) {
        double s = 0.0;
        for (std::size_t k = 0; k < schedule.size(); ++k) {
            const double ang = (2.0 * static_cast<double>(schedule[k]) + 1.0) * th;
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
    return maximize_on_quarter_circle(loglik, grid_points);
}

/// Maximum-likelihood amplitude estimation: for every Grover power m_k in
/// the schedule, prepare Q^{m_k} A|0> and count good outcomes over
/// `shots_per_round` shots, then maximize the joint likelihood.
inline MlqaeResult run_mlqae(const StatePrepOracle &oracle, const MlqaeConfig &config, std::uint64_t rng_seed) {
    validate(oracle);
    validate(config);
    MlqaeResult r;
    const Circuit q = build_grover(oracle);
    StateVector s = prepare(oracle);
    std::size_t applied_power = 0;
    const int good_value = oracle.target == Target::PROB_ONE ? 1 : 0;
    for (std::size_t k = 0; k < config.schedule.size(); ++k) {
        while (applied_power < config.schedule[k]) {
            run(s, q);
            ++applied_power;
        }
        const std::size_t good[] = {oracle.good_qubit};
        const auto counts = sample(s, good, config.shots_per_round, stream_seed(rng_seed, {k}));
        r.hits.push_back(counts.count(static_cast<std::uint64_t>(good_value)));
    }
    r.theta_hat = mlqae_argmax(config.schedule, r.hits, config.shots_per_round, config.grid_points);
    r.a_hat = std::sin(r.theta_hat) * std::sin(r.theta_hat);
    r.queries_per_shot = mlqae_queries_per_shot(config.schedule);
    r.total_queries = r.queries_per_shot * config.shots_per_round;
    return r;
}

} // namespace sqkc

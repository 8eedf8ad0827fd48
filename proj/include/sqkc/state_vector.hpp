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
 * Dense statevector over n qubits.
 *
 * Qubit q is bit q of the amplitude index (little-endian). A register
 * spanning qubits {q_0, ..., q_{k-1}} reads as the integer
 * sum_b bit(q_b) << b.
 */
#pragma once

#include "errors.hpp"
#include "rng.hpp"
#include "tolerance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sqkc {

using Complex = std::complex<double>;

class StateVector {
  public:
    /// |0...0> on `n_qubits` qubits.
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits < 1 || n_qubits > tol::kMaxQubits) {
            throw CapacityError("state needs " + std::to_string(n_qubits) + " qubits; supported range is 1.." +
                                std::to_string(tol::kMaxQubits));
        }
        amps_.assign(std::size_t{1} << n_qubits, Complex{});
        amps_[0] = 1.0;
    }

    /// Adopts explicit amplitudes; length must be a power of two and the
    /// vector must be normalized.
    static StateVector from_amplitudes(std::vector<Complex> amps) {
        const std::size_t len = amps.size();
        if (len < 2 || (len & (len - 1)) != 0) {
            throw InvalidArgument("amplitude count must be a power of two >= 2");
        }
        std::size_t n = 0;
        while ((std::size_t{1} << n) < len) {
            ++n;
        }
        StateVector s(n);
        s.amps_ = std::move(amps);
        if (std::abs(s.norm_squared() - 1.0) > tol::kExact) {
            throw InvalidArgument("amplitudes are not normalized");
        }
        return s;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    void check_qubit(std::size_t q) const {
        if (q >= n_qubits_) {
            throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                                  std::to_string(n_qubits_) + "-qubit state");
        }
    }

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

inline StateVector new_state(std::size_t n_qubits) { return StateVector(n_qubits); }

/// <a|b>.
inline Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InvalidArgument("inner_product: qubit counts differ");
    }
    Complex s{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

/// Marginal probability that `qubit` reads `outcome`.
inline double probability(const StateVector &state, std::size_t qubit, int outcome) {
    state.check_qubit(qubit);
    detail::require(outcome == 0 || outcome == 1, "outcome must be 0 or 1");
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t want = outcome ? mask : 0;
    double p = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == want) {
            p += std::norm(amps[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

/// <Z x ... x Z> over `qubits`.
inline double expectation_z(const StateVector &state, std::span<const std::size_t> qubits) {
    detail::require(!qubits.empty(), "expectation_z needs at least one qubit");
    std::size_t mask = 0;
    for (auto q : qubits) {
        state.check_qubit(q);
        mask |= std::size_t{1} << q;
    }
    double e = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        e += (std::popcount(i & mask) & 1U) ? -p : p;
    }
    return std::clamp(e, -1.0, 1.0);
}

inline double expectation_z(const StateVector &state, std::initializer_list<std::size_t> qubits) {
    return expectation_z(state, std::span<const std::size_t>(qubits.begin(), qubits.size()));
}

/// Exact distribution of the register formed by `qubits` (qubits[0] is the
/// least significant bit of the outcome).
inline std::vector<double> marginal_distribution(const StateVector &state, std::span<const std::size_t> qubits) {
    detail::require(!qubits.empty(), "marginal_distribution needs at least one qubit");
    detail::require(qubits.size() < 63, "register too wide");
    for (auto q : qubits) {
        state.check_qubit(q);
    }
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t key = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            key |= ((i >> qubits[b]) & 1U) << b;
        }
        dist[key] += std::norm(amps[i]);
    }
    return dist;
}

/// Measured register value -> occurrence count.
struct ShotCounts {
    std::size_t bit_width = 0;
    std::size_t total_shots = 0;
    std::map<std::uint64_t, std::size_t> counts;

    [[nodiscard]] std::size_t count(std::uint64_t key) const {
        const auto it = counts.find(key);
        return it == counts.end() ? 0 : it->second;
    }

    /// Bitstring of `key`, most significant register bit first.
    [[nodiscard]] std::string bitstring(std::uint64_t key) const {
        std::string s(bit_width, '0');
        for (std::size_t b = 0; b < bit_width; ++b) {
            if ((key >> b) & 1U) {
                s[bit_width - 1 - b] = '1';
            }
        }
        return s;
    }
};

/// Draws `shots` outcomes from a discrete distribution by inverse CDF.
inline ShotCounts sample_distribution(std::span<const double> dist, std::size_t bit_width, std::size_t shots,
                                      Rng &rng) {
    if (shots == 0) {
        throw InvalidArgument("shots must be >= 1");
    }
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i];
        cdf[i] = acc;
    }
    ShotCounts out;
    out.bit_width = bit_width;
    out.total_shots = shots;
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto idx = static_cast<std::size_t>(std::distance(cdf.begin(), it));
        if (idx >= dist.size()) {
            idx = dist.size() - 1;
        }
        ++out.counts[idx];
    }
    return out;
}

/// Samples the register `qubits` i.i.d. `shots` times.
inline ShotCounts sample(const StateVector &state, std::span<const std::size_t> qubits, std::size_t shots,
                         std::uint64_t rng_seed) {
    if (shots == 0) {
        throw InvalidArgument("shots must be >= 1");
    }
    const auto dist = marginal_distribution(state, qubits);
    auto rng = make_rng(rng_seed);
    return sample_distribution(dist, qubits.size(), shots, rng);
}

inline ShotCounts sample(const StateVector &state, std::initializer_list<std::size_t> qubits, std::size_t shots,
                         std::uint64_t rng_seed) {
    return sample(state, std::span<const std::size_t>(qubits.begin(), qubits.size()), shots, rng_seed);
}

} // namespace sqkc

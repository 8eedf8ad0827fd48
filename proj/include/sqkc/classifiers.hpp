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
 * Kernel classifier pipelines (HC, SC, SHC, SSC), the weighted
 * Hadamard/swap tests that evaluate one training sample at a time, and the
 * direct classical score used as their oracle.
 */
#pragma once

#include "encoding.hpp"
#include "errors.hpp"
#include "gates.hpp"
#include "state_vector.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace sqkc {

enum class Kernel { RE_OVERLAP, FIDELITY };

constexpr Kernel kernel_of(Flavor f) { return is_hadamard(f) ? Kernel::RE_OVERLAP : Kernel::FIDELITY; }

struct ClassifierOutcome {
    Flavor flavor = Flavor::SHC;
    double score = 0.0;       ///< f(x~) = sum_m (-1)^{y_m} w_m k(x_m, x~)
    double pr_one = 0.0;      ///< probability of reading 1 on the classifier readout
    int predicted_label = 0;  ///< 0 iff score >= 0
    double expectation = 0.0; ///< <sigma_z> of the readout, equals score

    [[nodiscard]] double pr_zero() const noexcept { return 1.0 - pr_one; }
};

/// Score sign to label. A score of exactly zero predicts class 0.
constexpr int decide(double score) { return score >= 0.0 ? 0 : 1; }

/// <a|b> of the normalized vectors.
inline Complex normalized_overlap(const FeatureVector &a, const FeatureVector &b) {
    const auto u = normalized_padded(a);
    const auto v = normalized_padded(b);
    detail::require(u.size() == v.size(), "feature dimensions differ");
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

inline double kernel_value(const FeatureVector &a, const FeatureVector &b, Kernel k) {
    const Complex o = normalized_overlap(a, b);
    return k == Kernel::RE_OVERLAP ? o.real() : std::norm(o);
}

/// sum_m (-1)^{y_m} w_m k(x_m, x~) from direct inner products.
inline double classical_score(const LabeledDataset &data, Kernel kernel) {
    validate(data);
    double s = 0.0;
    for (std::size_t m = 0; m < data.size(); ++m) {
        const double sign = data.labels[m] == 0 ? 1.0 : -1.0;
        s += sign * data.weights[m] * kernel_value(data.train_features[m], data.test_features, kernel);
    }
    return s;
}

namespace detail {
inline ClassifierOutcome outcome_from(Flavor flavor, double pr_one, double expectation) {
    ClassifierOutcome o;
    o.flavor = flavor;
    o.pr_one = pr_one;
    o.expectation = expectation;
    o.score = expectation;
    o.predicted_label = decide(expectation);
    return o;
}
} // namespace detail

/// Final SHC/SSC state (before measurement) for `data`.
inline StateVector sqkc_final_state(const LabeledDataset &data, Flavor flavor) {
    const auto enc = encode_class_ordered(data);
    const auto layout = sqkc_layout(enc, flavor);
    StateVector s(layout.n_qubits);
    run(s, sqkc_circuit(enc, flavor));
    return s;
}

/// Runs the flavor's circuit on the exact statevector.
///
/// SHC/SSC read the single ancilla after the class CNOT. HC/SC read the
/// two-qubit parity <Z_a Z_c>; their pr_one is the probability of odd parity.
inline ClassifierOutcome classify(const LabeledDataset &data, Flavor flavor) {
    validate(data);
    require_flavor_compatible(data, flavor);
    if (is_simplified(flavor)) {
        const auto s = sqkc_final_state(data, flavor);
        const double p1 = probability(s, 0, 1);
        return detail::outcome_from(flavor, p1, expectation_z(s, {0}));
    }
    const auto l = legacy_layout(data, flavor);
    StateVector s(l.n_qubits);
    run(s, legacy_preparation_circuit(data, flavor));
    run(s, interference_circuit(l.ancilla, l.data, l.test, flavor));
    const std::size_t readout[] = {l.ancilla, l.class_qubit};
    const double e = expectation_z(s, readout);
    return detail::outcome_from(flavor, (1.0 - e) / 2.0, e);
}

/// Rotation angle whose sine carries a signed training weight.
struct WeightAngle {
    double lambda = 0.0;

    /// sin(lambda) = (-1)^label * weight.
    static WeightAngle from_weight(int label, double weight) {
        detail::require(weight >= 0.0 && weight <= 1.0, "weight must lie in [0, 1]");
        detail::require(label == 0 || label == 1, "label must be 0 or 1");
        return {std::asin(label == 0 ? weight : -weight)};
    }
};

enum class TestKind { HADAMARD, SWAP };

/// One weighted Hadamard or swap test on a single training sample.
///
/// Layout: ancilla | data (d) | [test (d)] | weight. The weight qubit is
/// rotated by RY(pi/2 - lambda) and flips the ancilla after the test, so
/// <Z_ancilla> = cos(pi/2 - lambda) k = sin(lambda) k.
inline double weighted_test(const FeatureVector &x_m, const FeatureVector &x_test, WeightAngle angle,
                            TestKind kind) {
    detail::require(std::abs(std::sin(angle.lambda)) <= 1.0 + 1e-15, "|sin(lambda)| must be <= 1");
    const auto xm = normalized_padded(x_m);
    const auto xt = normalized_padded(x_test);
    detail::require(xm.size() == xt.size(), "feature dimensions differ");
    const std::size_t d = qubits_for(x_m.size());
    const Flavor flavor = kind == TestKind::HADAMARD ? Flavor::SHC : Flavor::SSC;

    const std::size_t ancilla = 0;
    const auto data = qubit_range(1, d);
    const auto test = kind == TestKind::SWAP ? qubit_range(1 + d, d) : std::vector<std::size_t>{};
    const std::size_t weight = 1 + d + test.size();
    StateVector s(weight + 1);

    Circuit c;
    if (kind == TestKind::HADAMARD) {
        for (auto &v : {xm, xt}) {
            if (std::any_of(v.begin(), v.end(), [](const Complex &z) { return z.imag() != 0.0; })) {
                throw InvalidArgument("complex features are not supported by the Hadamard test");
            }
        }
        c.push_back(gates::h(ancilla));
        c.push_back(load_state(xm, data).controlled_by(ancilla, 0));
        c.push_back(load_state(xt, data).controlled_by(ancilla, 1));
    } else {
        c.push_back(load_state(xm, data));
        c.push_back(load_state(xt, test));
    }
    append(c, interference_circuit(ancilla, data, test, flavor));
    c.push_back(gates::ry(weight, std::numbers::pi / 2.0 - angle.lambda));
    c.push_back(gates::cnot(weight, ancilla));
    run(s, c);
    return expectation_z(s, {ancilla});
}

/// Classical aggregation of per-sample weighted tests.
inline double aggregate_score(std::span<const double> terms) {
    if (terms.empty()) {
        throw InvalidArgument("aggregate_score needs at least one term");
    }
    double s = 0.0;
    for (double t : terms) {
        s += t;
    }
    return s;
}

/// Score of `data` computed without data superposition: one weighted test
/// per training sample, summed classically.
inline double superposition_free_score(const LabeledDataset &data, TestKind kind) {
    validate(data);
    std::vector<double> terms;
    terms.reserve(data.size());
    for (std::size_t m = 0; m < data.size(); ++m) {
        terms.push_back(weighted_test(data.train_features[m], data.test_features,
                                      WeightAngle::from_weight(data.labels[m], data.weights[m]), kind));
    }
    return aggregate_score(terms);
}

} // namespace sqkc

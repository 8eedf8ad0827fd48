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
 * Amplitude encoding and the dataset-superposition states of the kernel
 * classifiers.
 *
 * Register layouts (qubit 0 first):
 *
 *   SHC:  ancilla | index (n) | data (d)
 *   SSC:  ancilla | index (n) | train data (d) | test data (d)
 *   HC:   ancilla | data (d)  | class | index (n)
 *   SC:   ancilla | train (d) | test (d) | class | index (n)
 *
 * Every register stores its integer value little-endian. Under class-ordered
 * encoding the most significant index qubit equals the training label and
 * plays the role of the class qubit.
 */
#pragma once

#include "errors.hpp"
#include "gates.hpp"
#include "state_vector.hpp"
#include "tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace sqkc {

using FeatureVector = std::vector<Complex>;

enum class Flavor { HC, SC, SHC, SSC };

inline const char *to_string(Flavor f) {
    switch (f) {
    case Flavor::HC:
        return "hc";
    case Flavor::SC:
        return "sc";
    case Flavor::SHC:
        return "shc";
    case Flavor::SSC:
        return "ssc";
    }
    return "?";
}

/// Hadamard-style flavors read Re<x_m|x~> and require real features.
constexpr bool is_hadamard(Flavor f) { return f == Flavor::HC || f == Flavor::SHC; }
constexpr bool is_simplified(Flavor f) { return f == Flavor::SHC || f == Flavor::SSC; }

struct LabeledDataset {
    std::vector<FeatureVector> train_features;
    std::vector<int> labels;
    std::vector<double> weights;
    FeatureVector test_features;

    [[nodiscard]] std::size_t size() const noexcept { return train_features.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return test_features.size(); }

    [[nodiscard]] bool is_real() const {
        auto real = [](const FeatureVector &v) {
            return std::all_of(v.begin(), v.end(), [](const Complex &c) { return c.imag() == 0.0; });
        };
        return real(test_features) && std::all_of(train_features.begin(), train_features.end(), real);
    }
};

/// Builds a dataset from real feature rows. Empty `weights` means uniform.
inline LabeledDataset make_dataset(const std::vector<std::vector<double>> &train, std::vector<int> labels,
                                   const std::vector<double> &test, std::vector<double> weights = {}) {
    LabeledDataset d;
    for (const auto &row : train) {
        d.train_features.emplace_back(row.begin(), row.end());
    }
    d.labels = std::move(labels);
    d.test_features.assign(test.begin(), test.end());
    if (weights.empty() && !train.empty()) {
        weights.assign(train.size(), 1.0 / static_cast<double>(train.size()));
    }
    d.weights = std::move(weights);
    return d;
}

inline void validate(const LabeledDataset &d) {
    if (d.train_features.empty()) {
        throw InvalidArgument("dataset needs at least one training sample");
    }
    if (d.labels.size() != d.size() || d.weights.size() != d.size()) {
        throw InvalidArgument("labels and weights must match the number of training samples");
    }
    const std::size_t n = d.dimension();
    if (n == 0) {
        throw InvalidArgument("feature dimension must be >= 1");
    }
    auto nonzero = [](const FeatureVector &x) {
        return std::any_of(x.begin(), x.end(), [](const Complex &c) { return c != Complex{}; });
    };
    for (const auto &x : d.train_features) {
        if (x.size() != n) {
            throw InvalidArgument("all feature vectors must share one dimension");
        }
        if (!nonzero(x)) {
            throw InvalidArgument("feature vectors must be nonzero");
        }
    }
    if (!nonzero(d.test_features)) {
        throw InvalidArgument("feature vectors must be nonzero");
    }
    for (int y : d.labels) {
        if (y != 0 && y != 1) {
            throw InvalidArgument("labels must be 0 or 1");
        }
    }
    double total = 0.0;
    for (double w : d.weights) {
        if (!(w >= 0.0)) {
            throw InvalidArgument("weights must be nonnegative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > tol::kWeights) {
        throw InvalidArgument("weights must sum to 1");
    }
}

/// Qubits needed to hold `count` basis states (at least one).
inline std::size_t qubits_for(std::size_t count) {
    std::size_t q = 0;
    while ((std::size_t{1} << q) < count) {
        ++q;
        if (q > 62) {
            throw CapacityError("dimension overflow");
        }
    }
    return std::max<std::size_t>(q, 1);
}

/// L2-normalized features padded with zeros to the next power of two.
inline FeatureVector normalized_padded(const FeatureVector &features) {
    if (features.empty()) {
        throw InvalidArgument("cannot encode an empty vector");
    }
    if (features.size() > (std::size_t{1} << tol::kMaxQubits)) {
        throw CapacityError("feature dimension exceeds 2^" + std::to_string(tol::kMaxQubits));
    }
    double norm = 0.0;
    for (const auto &c : features) {
        norm += std::norm(c);
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("cannot encode a zero vector");
    }
    norm = std::sqrt(norm);
    FeatureVector out(std::size_t{1} << qubits_for(features.size()), Complex{});
    for (std::size_t i = 0; i < features.size(); ++i) {
        out[i] = features[i] / norm;
    }
    return out;
}

inline StateVector amplitude_encode(const FeatureVector &features) {
    return StateVector::from_amplitudes(normalized_padded(features));
}

inline StateVector amplitude_encode(const std::vector<double> &features) {
    return amplitude_encode(FeatureVector(features.begin(), features.end()));
}

/// A unitary whose first column is the unit vector `v` (length a power of
/// two): U = e^{i alpha} (I - 2 u u^dagger / u^dagger u) with u = e_0 - e^{-i alpha} v.
inline Matrix state_preparation_matrix(const FeatureVector &v) {
    const std::size_t dim = v.size();
    const double mag0 = std::abs(v[0]);
    const Complex phase = mag0 > 0.0 ? v[0] / mag0 : Complex{1.0};
    std::vector<Complex> u(dim);
    double unorm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        u[i] = (i == 0 ? Complex{1.0} : Complex{}) - std::conj(phase) * v[i];
        unorm += std::norm(u[i]);
    }
    Matrix m = Matrix::identity(dim);
    if (unorm > 1e-30) {
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                m(r, c) -= 2.0 * u[r] * std::conj(u[c]) / unorm;
            }
        }
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(r, c) *= phase;
        }
    }
    return m;
}

inline std::vector<std::size_t> qubit_range(std::size_t begin, std::size_t count) {
    std::vector<std::size_t> q(count);
    std::iota(q.begin(), q.end(), begin);
    return q;
}

/// Gate loading the unit vector `v` onto `reg` from |0>.
inline GateSpec load_state(const FeatureVector &v, const std::vector<std::size_t> &reg) {
    return gates::unitary(state_preparation_matrix(v), reg);
}

/// Adds controls selecting the basis state |value> of `reg`.
inline GateSpec select_basis(GateSpec g, const std::vector<std::size_t> &reg, std::size_t value) {
    for (std::size_t b = 0; b < reg.size(); ++b) {
        g.controls.push_back({reg[b], static_cast<int>((value >> b) & 1U)});
    }
    return g;
}

/// Class-ordered view of a dataset: class-0 samples occupy index values
/// [0, 2^{n-1}), class-1 samples [2^{n-1}, 2^n).
struct EncodedDataset {
    LabeledDataset class_ordered;
    std::size_t index_qubits = 1;
    std::vector<std::size_t> permutation; ///< permutation[original] = position in class_ordered
    std::vector<std::size_t> slots;       ///< slots[position] = index-register value

    [[nodiscard]] std::size_t class_qubit_offset() const noexcept { return index_qubits - 1; }
};

inline EncodedDataset encode_class_ordered(const LabeledDataset &data) {
    validate(data);
    const std::size_t m = data.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return data.labels[a] < data.labels[b]; });
    const auto ones = static_cast<std::size_t>(std::count(data.labels.begin(), data.labels.end(), 1));
    const std::size_t zeros = m - ones;

    EncodedDataset enc;
    // one qubit for the class half plus enough to index the larger class
    const std::size_t larger = std::max(zeros, ones);
    enc.index_qubits = 1 + (larger <= 1 ? 0 : qubits_for(larger));
    const std::size_t half = std::size_t{1} << (enc.index_qubits - 1);

    enc.permutation.resize(m);
    enc.slots.resize(m);
    auto &o = enc.class_ordered;
    o.test_features = data.test_features;
    for (std::size_t pos = 0; pos < m; ++pos) {
        const std::size_t src = order[pos];
        enc.permutation[src] = pos;
        o.train_features.push_back(data.train_features[src]);
        o.labels.push_back(data.labels[src]);
        o.weights.push_back(data.weights[src]);
        enc.slots[pos] = data.labels[src] == 0 ? pos : half + (pos - zeros);
    }
    return enc;
}

/// Qubit assignment of an SHC/SSC circuit.
struct SqkcLayout {
    std::size_t ancilla = 0;
    std::vector<std::size_t> index;
    std::vector<std::size_t> data; ///< shared (SHC) or training (SSC) register
    std::vector<std::size_t> test; ///< SSC only
    std::size_t class_qubit = 0;
    std::size_t n_qubits = 0;
};

inline SqkcLayout sqkc_layout(const EncodedDataset &enc, Flavor flavor) {
    detail::require(is_simplified(flavor), "sqkc_layout needs SHC or SSC");
    const std::size_t d = qubits_for(enc.class_ordered.dimension());
    SqkcLayout l;
    l.index = qubit_range(1, enc.index_qubits);
    l.data = qubit_range(1 + enc.index_qubits, d);
    if (flavor == Flavor::SSC) {
        l.test = qubit_range(1 + enc.index_qubits + d, d);
    }
    l.class_qubit = l.index.back();
    l.n_qubits = 1 + enc.index_qubits + d * (flavor == Flavor::SSC ? 2 : 1);
    if (l.n_qubits > tol::kMaxQubits) {
        throw CapacityError("classifier circuit needs " + std::to_string(l.n_qubits) + " qubits");
    }
    return l;
}

inline void require_flavor_compatible(const LabeledDataset &data, Flavor flavor) {
    if (is_hadamard(flavor) && !data.is_real()) {
        throw InvalidArgument(std::string("complex features are not supported by ") + to_string(flavor) +
                              " (its kernel reads only the real part of the overlap)");
    }
}

/// Gates preparing sum_m sqrt(w_m) |psi(m)>|m> from |0...0>.
inline Circuit sqkc_preparation_circuit(const EncodedDataset &enc, Flavor flavor) {
    const auto &data = enc.class_ordered;
    require_flavor_compatible(data, flavor);
    const auto l = sqkc_layout(enc, flavor);

    FeatureVector index_amps(std::size_t{1} << enc.index_qubits, Complex{});
    for (std::size_t pos = 0; pos < data.size(); ++pos) {
        index_amps[enc.slots[pos]] = std::sqrt(data.weights[pos]);
    }

    Circuit c;
    c.push_back(load_state(index_amps, l.index));
    const auto test = normalized_padded(data.test_features);
    if (flavor == Flavor::SHC) {
        c.push_back(gates::h(l.ancilla));
        for (std::size_t pos = 0; pos < data.size(); ++pos) {
            if (data.weights[pos] == 0.0) {
                continue;
            }
            auto g = load_state(normalized_padded(data.train_features[pos]), l.data).controlled_by(l.ancilla, 0);
            c.push_back(select_basis(std::move(g), l.index, enc.slots[pos]));
        }
        c.push_back(load_state(test, l.data).controlled_by(l.ancilla, 1));
    } else {
        for (std::size_t pos = 0; pos < data.size(); ++pos) {
            if (data.weights[pos] == 0.0) {
                continue;
            }
            c.push_back(select_basis(load_state(normalized_padded(data.train_features[pos]), l.data), l.index,
                                     enc.slots[pos]));
        }
        c.push_back(load_state(test, l.test));
    }
    return c;
}

/// Hadamard (SHC) or H . c-swap . H (SSC) on the ancilla.
inline Circuit interference_circuit(std::size_t ancilla, const std::vector<std::size_t> &data,
                                    const std::vector<std::size_t> &test, Flavor flavor) {
    Circuit c;
    c.push_back(gates::h(ancilla));
    if (!is_hadamard(flavor)) {
        for (std::size_t b = 0; b < data.size(); ++b) {
            c.push_back(gates::swap(data[b], test[b]).controlled_by(ancilla));
        }
        c.push_back(gates::h(ancilla));
    }
    return c;
}

/// Full SHC/SSC circuit: preparation, interference, then the CNOT from the
/// class-identifiable qubit onto the ancilla. Afterwards
/// <Z_ancilla> = sum_m (-1)^{y_m} w_m k(x_m, x~).
inline Circuit sqkc_circuit(const EncodedDataset &enc, Flavor flavor) {
    const auto l = sqkc_layout(enc, flavor);
    Circuit c = sqkc_preparation_circuit(enc, flavor);
    append(c, interference_circuit(l.ancilla, l.data, l.test, flavor));
    c.push_back(gates::cnot(l.class_qubit, l.ancilla));
    return c;
}

inline StateVector prepare_sqkc_state(const EncodedDataset &enc, Flavor flavor) {
    StateVector s(sqkc_layout(enc, flavor).n_qubits);
    run(s, sqkc_preparation_circuit(enc, flavor));
    return s;
}

/// Qubit assignment of an HC/SC circuit.
struct LegacyLayout {
    std::size_t ancilla = 0;
    std::vector<std::size_t> data;
    std::vector<std::size_t> test; ///< SC only
    std::size_t class_qubit = 0;
    std::vector<std::size_t> index;
    std::size_t n_qubits = 0;
};

inline LegacyLayout legacy_layout(const LabeledDataset &data, Flavor flavor) {
    detail::require(!is_simplified(flavor), "legacy_layout needs HC or SC");
    const std::size_t d = qubits_for(data.dimension());
    std::size_t n = 0;
    while ((std::size_t{1} << n) < data.size()) {
        ++n;
    }
    LegacyLayout l;
    l.data = qubit_range(1, d);
    std::size_t next = 1 + d;
    if (flavor == Flavor::SC) {
        l.test = qubit_range(next, d);
        next += d;
    }
    l.class_qubit = next++;
    l.index = qubit_range(next, n);
    l.n_qubits = next + n;
    if (l.n_qubits > tol::kMaxQubits) {
        throw CapacityError("classifier circuit needs " + std::to_string(l.n_qubits) + " qubits");
    }
    return l;
}

/// Gates preparing |Psi^h> or |Psi^s>, including the class qubit written by
/// index-controlled NOTs.
inline Circuit legacy_preparation_circuit(const LabeledDataset &data, Flavor flavor) {
    validate(data);
    require_flavor_compatible(data, flavor);
    const auto l = legacy_layout(data, flavor);

    Circuit c;
    if (!l.index.empty()) {
        FeatureVector index_amps(std::size_t{1} << l.index.size(), Complex{});
        for (std::size_t m = 0; m < data.size(); ++m) {
            index_amps[m] = std::sqrt(data.weights[m]);
        }
        c.push_back(load_state(index_amps, l.index));
    }
    const auto test = normalized_padded(data.test_features);
    if (flavor == Flavor::HC) {
        c.push_back(gates::h(l.ancilla));
    }
    for (std::size_t m = 0; m < data.size(); ++m) {
        if (data.weights[m] == 0.0) {
            continue;
        }
        auto g = load_state(normalized_padded(data.train_features[m]), l.data);
        if (flavor == Flavor::HC) {
            g = g.controlled_by(l.ancilla, 0);
        }
        c.push_back(select_basis(std::move(g), l.index, m));
    }
    if (flavor == Flavor::HC) {
        c.push_back(load_state(test, l.data).controlled_by(l.ancilla, 1));
    } else {
        c.push_back(load_state(test, l.test));
    }
    for (std::size_t m = 0; m < data.size(); ++m) {
        if (data.labels[m] == 1) {
            c.push_back(select_basis(gates::x(l.class_qubit), l.index, m));
        }
    }
    return c;
}

inline StateVector prepare_legacy_state(const LabeledDataset &data, Flavor flavor) {
    StateVector s(legacy_layout(data, flavor).n_qubits);
    run(s, legacy_preparation_circuit(data, flavor));
    return s;
}

} // namespace sqkc

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
// Independent reference computations shared by the test suites. Nothing
// here calls into the simulator.
#pragma once

#include "sqkc/encoding.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;

inline std::vector<C> normalize(std::vector<C> v) {
    double n = 0.0;
    for (auto &z : v) {
        n += std::norm(z);
    }
    for (auto &z : v) {
        z /= std::sqrt(n);
    }
    return v;
}

inline C overlap(const std::vector<C> &a, const std::vector<C> &b) {
    const auto u = normalize(a), v = normalize(b);
    C s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

/// sum_m (-1)^{y_m} w_m k(x_m, x~) with k = Re<.|.> or |<.|.>|^2.
inline double score(const sqkc::LabeledDataset &d, bool fidelity) {
    double s = 0.0;
    for (std::size_t m = 0; m < d.train_features.size(); ++m) {
        const C o = overlap(d.train_features[m], d.test_features);
        const double k = fidelity ? std::norm(o) : o.real();
        s += (d.labels[m] == 0 ? 1.0 : -1.0) * d.weights[m] * k;
    }
    return s;
}

/// Random dataset: M samples of dimension N, random labels and weights.
/// Labels always contain both classes when M >= 2.
inline sqkc::LabeledDataset random_dataset(std::mt19937_64 &rng, std::size_t m, std::size_t n, bool complex = false) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    auto vec = [&] {
        std::vector<C> v(n);
        for (auto &z : v) {
            z = {g(rng), complex ? g(rng) : 0.0};
        }
        return v;
    };
    sqkc::LabeledDataset d;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        d.train_features.push_back(vec());
        d.labels.push_back(static_cast<int>(rng() & 1U));
        d.weights.push_back(u(rng));
        total += d.weights.back();
    }
    if (m >= 2) {
        d.labels[0] = 0;
        d.labels[1] = 1;
    }
    for (auto &w : d.weights) {
        w /= total;
    }
    d.test_features = vec();
    return d;
}

inline const sqkc::LabeledDataset &eq16() {
    static const auto d =
        sqkc::make_dataset({{0.9635, 0.2676}, {0.3526, 0.9358}}, {0, 1}, {0.3856, 0.9227}, {0.5, 0.5});
    return d;
}

} // namespace oracle

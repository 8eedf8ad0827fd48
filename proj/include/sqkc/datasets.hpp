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
 * Embedded Iris-derived datasets plus CSV/JSON/Iris loaders.
 *
 * Embedded entries are two-sample, two-feature sets (x0 class 0, x1 class
 * 1, equal weights) with four-decimal amplitudes. Each carries
 * the probability its reference value refers to, since the tabulated
 * values mix Pr(1) and Pr(0) of the ancilla.
 */
#pragma once

#include "amplitude_estimation.hpp"
#include "encoding.hpp"
#include "errors.hpp"
#include "experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sqkc {

struct NamedDataset {
    std::string id;
    LabeledDataset data;
    Target target = Target::PROB_ONE;
    std::optional<double> reference_a; ///< tabulated target probability, 4 decimals
};

namespace detail {
struct EmbeddedRow {
    const char *id;
    std::array<double, 2> test, x0, x1;
    double a;
    Target target;
};

// clang-format off
inline constexpr EmbeddedRow kEmbedded[] = {
    {"eq16",  {0.3856, 0.9227}, {0.9635, 0.2676}, {0.3526, 0.9358}, 0.5952, Target::PROB_ONE},
    {"shc-1", {0.3856, 0.9227}, {0.9635, 0.2676}, {0.3526, 0.9358}, 0.5952, Target::PROB_ONE},
    {"shc-2", {0.3436, 0.9391}, {0.3162, 0.9487}, {0.8882, 0.4594}, 0.4343, Target::PROB_ONE},
    {"shc-3", {0.8882, 0.4594}, {0.3714, 0.9285}, {0.8914, 0.4532}, 0.4391, Target::PROB_ZERO},
    {"shc-4", {0.4158, 0.9095}, {0.4229, 0.9062}, {0.8638, 0.5039}, 0.5456, Target::PROB_ZERO},
    {"shc-5", {0.3757, 0.9267}, {0.4356, 0.9002}, {0.9358, 0.3526}, 0.5799, Target::PROB_ZERO},
    {"shc-6", {0.3443, 0.9389}, {0.4472, 0.8944}, {0.8838, 0.4679}, 0.4375, Target::PROB_ONE},
    {"ssc-1", {0.3856, 0.9227}, {0.9635, 0.2676}, {0.3526, 0.9358}, 0.6541, Target::PROB_ONE},
    {"ssc-2", {0.8944, 0.4472}, {0.3162, 0.9487}, {0.8882, 0.4594}, 0.6250, Target::PROB_ONE},
    {"ssc-3", {0.3482, 0.9374}, {0.4258, 0.9048}, {0.8973, 0.4413}, 0.6164, Target::PROB_ZERO},
    {"ssc-4", {0.8779, 0.4789}, {0.3482, 0.9374}, {0.8720, 0.4895}, 0.3924, Target::PROB_ZERO},
    {"ssc-5", {0.8662, 0.4997}, {0.3162, 0.9487}, {0.8720, 0.4895}, 0.6101, Target::PROB_ONE},
    {"ssc-6", {0.8944, 0.4472}, {0.3511, 0.9363}, {0.8838, 0.4679}, 0.3844, Target::PROB_ZERO},
};
// clang-format on

inline NamedDataset from_row(const EmbeddedRow &r) {
    NamedDataset d;
    d.id = r.id;
    d.data = make_dataset({{r.x0[0], r.x0[1]}, {r.x1[0], r.x1[1]}}, {0, 1}, {r.test[0], r.test[1]}, {0.5, 0.5});
    d.target = r.target;
    d.reference_a = r.a;
    return d;
}

inline std::string trim(std::string s) {
    const auto ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    const auto end = s.find_last_not_of(ws);
    s.erase(end == std::string::npos ? 0 : end + 1);
    return s;
}

inline std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

inline double parse_number(const std::string &s, const std::string &where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw DataError(where + ": not a number: '" + s + "'");
    }
}

inline std::ifstream open_or_throw(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    return in;
}
} // namespace detail

/// Ids of the embedded datasets, in table order.
inline std::vector<std::string> builtin_ids() {
    std::vector<std::string> ids;
    for (const auto &r : detail::kEmbedded) {
        ids.emplace_back(r.id);
    }
    return ids;
}

inline NamedDataset builtin_dataset(const std::string &id) {
    for (const auto &r : detail::kEmbedded) {
        if (id == r.id) {
            return detail::from_row(r);
        }
    }
    throw DataError("unknown builtin dataset '" + id + "'");
}

/// Tabulated value for classifying `d` with `flavor`, if there is one. The
/// eq16 vectors appear in both tables (shc-1, ssc-1).
inline std::optional<double> reference_for(const NamedDataset &d, Flavor flavor) {
    if (!d.reference_a) {
        return std::nullopt;
    }
    if (d.id == "eq16") {
        return flavor == Flavor::SSC ? builtin_dataset("ssc-1").reference_a : d.reference_a;
    }
    const Flavor table = d.id.rfind("ssc-", 0) == 0 ? Flavor::SSC : Flavor::SHC;
    return flavor == table ? d.reference_a : std::nullopt;
}

/// The six table datasets of one flavor ("shc" or "ssc").
inline std::vector<NamedDataset> table_datasets(Flavor flavor) {
    detail::require(is_simplified(flavor), "table datasets exist for SHC and SSC only");
    const std::string prefix = flavor == Flavor::SHC ? "shc-" : "ssc-";
    std::vector<NamedDataset> out;
    for (int k = 1; k <= 6; ++k) {
        out.push_back(builtin_dataset(prefix + std::to_string(k)));
    }
    return out;
}

/// Runs `base` on every table dataset (six SHC, six SSC, each with its own
/// flavor and target) and averages the twelve reports pointwise.
inline ExperimentReport run_table_average(const ComparisonConfig &base,
                                          std::vector<ExperimentReport> *per_dataset = nullptr) {
    std::vector<ExperimentReport> reports;
    for (Flavor f : {Flavor::SHC, Flavor::SSC}) {
        for (const auto &nd : table_datasets(f)) {
            ComparisonConfig c = base;
            c.flavor = f;
            c.dataset = nd.data;
            c.dataset_id = nd.id;
            c.target = nd.target;
            reports.push_back(run_comparison(c));
        }
    }
    auto avg = average_reports(reports);
    avg.meta.dataset_id = "table average";
    if (per_dataset) {
        *per_dataset = std::move(reports);
    }
    return avg;
}

/// CSV with header `f1,...,fN,label`. Training rows carry label 0 or 1;
/// exactly one row labelled `?` or `test` is the test vector. Weights are
/// uniform.
inline LabeledDataset load_csv_dataset(std::istream &in, const std::string &name = "csv") {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(name + ": empty file");
    }
    const auto header = detail::split_csv(line);
    if (header.size() < 2 || header.back() != "label") {
        throw DataError(name + ": header must be f1,...,fN,label");
    }
    const std::size_t n = header.size() - 1;
    std::vector<std::vector<double>> train;
    std::vector<int> labels;
    std::optional<std::vector<double>> test;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto cells = detail::split_csv(line);
        const std::string where = name + ":" + std::to_string(row);
        if (cells.size() != n + 1) {
            throw DataError(where + ": expected " + std::to_string(n + 1) + " columns");
        }
        std::vector<double> f;
        for (std::size_t i = 0; i < n; ++i) {
            f.push_back(detail::parse_number(cells[i], where));
        }
        const auto &lab = cells.back();
        if (lab == "?" || lab == "test") {
            if (test) {
                throw DataError(where + ": more than one test row");
            }
            test = std::move(f);
        } else if (lab == "0" || lab == "1") {
            train.push_back(std::move(f));
            labels.push_back(lab == "1");
        } else {
            throw DataError(where + ": label must be 0, 1, ? or test");
        }
    }
    if (!test) {
        throw DataError(name + ": no test row (label ? or test)");
    }
    if (train.empty()) {
        throw DataError(name + ": no training rows");
    }
    auto d = make_dataset(train, labels, *test);
    validate(d);
    return d;
}

namespace detail {
inline FeatureVector json_vector(const nlohmann::json &j, const std::string &what) {
    if (!j.is_array() || j.empty()) {
        throw DataError(what + " must be a nonempty array");
    }
    FeatureVector v;
    for (const auto &e : j) {
        if (e.is_number()) {
            v.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            v.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw DataError(what + ": entries must be numbers or [re, im] pairs");
        }
    }
    return v;
}
} // namespace detail

/// JSON object {"train": [[...]...], "labels": [...], "test": [...],
/// optional "weights": [...], optional "target": "prob_one"|"prob_zero"}.
/// Entries may be complex as [re, im].
inline NamedDataset load_json_dataset(std::istream &in, const std::string &name = "json") {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(name + ": " + e.what());
    }
    try {
        NamedDataset out;
        out.id = name;
        auto &d = out.data;
        for (const auto &row : j.at("train")) {
            d.train_features.push_back(detail::json_vector(row, name + ": train row"));
        }
        d.labels = j.at("labels").get<std::vector<int>>();
        d.test_features = detail::json_vector(j.at("test"), name + ": test");
        if (j.contains("weights")) {
            d.weights = j.at("weights").get<std::vector<double>>();
        } else {
            d.weights.assign(d.train_features.size(), 1.0 / static_cast<double>(d.train_features.size()));
        }
        if (j.contains("target")) {
            const auto t = j.at("target").get<std::string>();
            if (t != "prob_one" && t != "prob_zero") {
                throw DataError(name + ": target must be prob_one or prob_zero");
            }
            out.target = t == "prob_one" ? Target::PROB_ONE : Target::PROB_ZERO;
        }
        validate(d);
        return out;
    } catch (const nlohmann::json::exception &e) {
        throw DataError(name + ": " + e.what());
    }
}

/// `builtin:NAME`, or a path ending in .json / .csv.
inline NamedDataset resolve_dataset(const std::string &ref) {
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) {
        return builtin_dataset(ref.substr(prefix.size()));
    }
    auto in = detail::open_or_throw(ref);
    if (ref.size() >= 5 && ref.substr(ref.size() - 5) == ".json") {
        return load_json_dataset(in, ref);
    }
    NamedDataset d;
    d.id = ref;
    d.data = load_csv_dataset(in, ref);
    return d;
}

/// Standard 150-row Iris CSV (`sepal_length,sepal_width,petal_length,
/// petal_width,species`). Picks feature columns and two species; the first
/// species becomes label 0. Features are used as raw amplitudes.
inline LabeledPool load_iris_pool(std::istream &in, std::array<std::size_t, 2> features = {0, 1},
                                  std::array<std::string, 2> classes = {"setosa", "versicolor"},
                                  const std::string &name = "iris") {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(name + ": empty file");
    }
    const auto header = detail::split_csv(line);
    if (header.size() != 5 || header.back() != "species") {
        throw DataError(name + ": header must be sepal_length,sepal_width,petal_length,petal_width,species");
    }
    for (auto f : features) {
        if (f >= 4) {
            throw InvalidArgument("feature index must be in [0, 4)");
        }
    }
    auto strip = [](std::string s) {
        const std::string p = "Iris-";
        if (s.rfind(p, 0) == 0) {
            s = s.substr(p.size());
        }
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    const std::array<std::string, 2> want{strip(classes[0]), strip(classes[1])};
    if (want[0] == want[1]) {
        throw InvalidArgument("the two classes must differ");
    }
    LabeledPool pool;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto cells = detail::split_csv(line);
        const std::string where = name + ":" + std::to_string(row);
        if (cells.size() != 5) {
            throw DataError(where + ": expected 5 columns");
        }
        const auto species = strip(cells[4]);
        const auto it = std::find(want.begin(), want.end(), species);
        if (it == want.end()) {
            continue;
        }
        FeatureVector f;
        for (auto c : features) {
            f.emplace_back(detail::parse_number(cells[c], where), 0.0);
        }
        pool.features.push_back(std::move(f));
        pool.labels.push_back(static_cast<int>(it - want.begin()));
    }
    for (int c = 0; c < 2; ++c) {
        if (std::count(pool.labels.begin(), pool.labels.end(), c) == 0) {
            throw DataError(name + ": no rows of class '" + want[static_cast<std::size_t>(c)] + "'");
        }
    }
    return pool;
}

inline LabeledPool load_iris_pool(const std::string &path, std::array<std::size_t, 2> features = {0, 1},
                                  std::array<std::string, 2> classes = {"setosa", "versicolor"}) {
    auto in = detail::open_or_throw(path);
    return load_iris_pool(in, features, std::move(classes), path);
}

} // namespace sqkc

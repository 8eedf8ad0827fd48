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
#pragma once

#include "errors.hpp"
#include "tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sqkc {

/// Element at 1-based rank ceil(0.81 I) of the ascending sort, i.e. the
/// error level met by 81% of repetitions (the 1621st of 2000).
/// |truth - estimate|, with round-off-level differences reported as exactly 0.
inline double abs_error(double truth, double estimate) {
    const double e = std::abs(truth - estimate);
    return e <= tol::kZeroError ? 0.0 : e;
}

inline double percentile_81(std::span<const double> errors) {
    if (errors.empty()) {
        throw InvalidArgument("percentile_81 of an empty list");
    }
    std::vector<double> v(errors.begin(), errors.end());
    // sorted[floor(0.81 I)], 0-based: the 1621st of 2000
    const std::size_t rank = std::min(v.size(), 81 * v.size() / 100 + 1);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank - 1), v.end());
    return v[rank - 1];
}

struct FitResult {
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    double residual_rms = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = true;
    std::size_t points_used = 0;
    std::size_t points_excluded = 0; ///< zero-error points dropped before the fit
    std::vector<std::string> warnings;
};

/// Least-squares line through (log2 samples, log2 error). Points with
/// non-positive error are excluded; fewer than two distinct usable abscissae
/// give a degenerate fit.
inline FitResult fit_log2(std::span<const std::pair<double, double>> points) {
    FitResult r;
    std::vector<std::pair<double, double>> xy;
    for (const auto &[samples, err] : points) {
        if (!(samples > 0.0)) {
            throw InvalidArgument("fit_log2: sample counts must be positive");
        }
        if (!(err > 0.0)) {
            ++r.points_excluded;
            continue;
        }
        xy.emplace_back(std::log2(samples), std::log2(err));
    }
    if (r.points_excluded > 0) {
        r.warnings.push_back(std::to_string(r.points_excluded) + " zero-error point(s) excluded from the log2 fit");
    }
    r.points_used = xy.size();
    if (xy.size() < 2) {
        r.warnings.emplace_back("fewer than two usable points: degenerate fit");
        return r;
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto &[x, y] : xy) {
        mx += x;
        my += y;
    }
    const auto n = static_cast<double>(xy.size());
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto &[x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0.0) {
        r.warnings.emplace_back("all usable points share one sample size: degenerate fit");
        return r;
    }
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss = 0.0;
    for (const auto &[x, y] : xy) {
        const double e = y - (r.slope * x + r.intercept);
        ss += e * e;
    }
    r.residual_rms = std::sqrt(ss / n);
    r.degenerate = false;
    return r;
}

} // namespace sqkc

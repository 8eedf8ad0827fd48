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
 * Report writers: CSV at full double precision, fit/manifest JSON, and
 * small self-contained SVG charts.
 */
#pragma once

#include "experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sqkc {

inline constexpr const char *kVersion = "1.0.0";

namespace io {

/// Shortest text that round-trips the double.
inline std::string full(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Six significant digits, for humans.
inline std::string short6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline void write_report_csv(std::ostream &out, const ExperimentReport &r) {
    out << "samples,err_p81_qae,err_min_qae,err_p81_baseline,bound\n";
    for (std::size_t k = 0; k < r.estimator_curve.entries.size(); ++k) {
        const auto &e = r.estimator_curve.entries[k];
        const auto &b = r.baseline_curve.entries[k];
        out << full(e.samples) << ',' << full(e.err_p81) << ',' << full(e.err_min) << ',' << full(b.err_p81) << ','
            << full(e.bound) << '\n';
    }
}

inline nlohmann::json fit_json(const FitResult &f) {
    nlohmann::json j;
    j["slope"] = f.degenerate ? nlohmann::json() : nlohmann::json(f.slope);
    j["intercept"] = f.degenerate ? nlohmann::json() : nlohmann::json(f.intercept);
    j["residual_rms"] = std::isfinite(f.residual_rms) ? nlohmann::json(f.residual_rms) : nlohmann::json();
    j["degenerate"] = f.degenerate;
    j["points_used"] = f.points_used;
    j["points_excluded"] = f.points_excluded;
    j["warnings"] = f.warnings;
    return j;
}

inline nlohmann::json report_json(const ExperimentReport &r, const std::string &manifest = "manifest.json") {
    nlohmann::json j;
    j["estimator"] = to_string(r.meta.estimator);
    j["flavor"] = to_string(r.meta.flavor);
    j["dataset"] = r.meta.dataset_id;
    j["target"] = to_string(r.meta.target);
    j["true_a"] = r.meta.true_a;
    j["seed"] = r.meta.seed;
    j["repetitions"] = r.meta.repetitions;
    j["shots"] = r.meta.shots;
    j["reports_averaged"] = r.meta.reports_averaged;
    j["estimator_fit"] = fit_json(r.estimator_fit);
    j["baseline_fit"] = fit_json(r.baseline_fit);
    j["slope_ratio"] = std::isfinite(r.slope_ratio) ? nlohmann::json(r.slope_ratio) : nlohmann::json();
    nlohmann::json within = nlohmann::json::array();
    for (const auto &e : r.estimator_curve.entries) {
        within.push_back({{"t", e.t}, {"samples", e.samples}, {"queries", e.queries}, {"fraction", e.within_bound_fraction}});
    }
    j["per_t"] = within;
    j["manifest"] = manifest;
    return j;
}

/// Probabilities below this are rounding residue of exact zeros.
inline constexpr double kNegligible = 1e-15;

/// Exact QAE pmf as `y,a_of_y,probability`; negligible rows are skipped.
inline void write_pmf_csv(std::ostream &out, std::span<const double> pmf, std::size_t t) {
    out << "y,a_of_y,probability\n";
    for (std::size_t y = 0; y < pmf.size(); ++y) {
        if (pmf[y] < kNegligible) {
            continue;
        }
        out << y << ',' << full(qae_value(y, t)) << ',' << full(pmf[y]) << '\n';
    }
}

inline double pmf_expectation(std::span<const double> pmf, std::size_t t) {
    double e = 0.0;
    for (std::size_t y = 0; y < pmf.size(); ++y) {
        e += pmf[y] * qae_value(y, t);
    }
    return e;
}

inline void write_trajectory_csv(std::ostream &out, const std::vector<ErrorTrajectory> &trs) {
    out << "train_count,iteration,error_rate\n";
    for (const auto &tr : trs) {
        for (const auto &[it, rate] : tr.points) {
            out << tr.train_count << ',' << it << ',' << full(rate) << '\n';
        }
    }
}

struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;

    [[nodiscard]] nlohmann::json to_json() const {
        return {{"command", command}, {"config", config},     {"seed", seed},
                {"outputs", outputs}, {"version", kVersion}, {"duration_seconds", duration_seconds}};
    }
};

// ---- SVG -----------------------------------------------------------------

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points; ///< already in plot units
    std::string color;
    bool dashed = false;
};

namespace detail {
inline std::string xml_escape(const std::string &s) {
    std::string o;
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

struct Frame {
    double x0, x1, y0, y1;
    static constexpr double W = 640, H = 420, L = 70, R = 20, T = 30, B = 50;
    [[nodiscard]] double px(double x) const { return L + (x - x0) / (x1 - x0) * (W - L - R); }
    [[nodiscard]] double py(double y) const { return H - B - (y - y0) / (y1 - y0) * (H - T - B); }
};

inline void svg_open(std::ostream &o, const Frame &f, const std::string &title, const std::string &xl,
                     const std::string &yl) {
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::W << "\" height=\"" << Frame::H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << Frame::W / 2 << "\" y=\"18\" text-anchor=\"middle\">" << xml_escape(title) << "</text>\n"
      << "<line x1=\"" << Frame::L << "\" y1=\"" << Frame::H - Frame::B << "\" x2=\"" << Frame::W - Frame::R
      << "\" y2=\"" << Frame::H - Frame::B << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << Frame::L << "\" y1=\"" << Frame::T << "\" x2=\"" << Frame::L << "\" y2=\""
      << Frame::H - Frame::B << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << Frame::W / 2 << "\" y=\"" << Frame::H - 12 << "\" text-anchor=\"middle\">"
      << xml_escape(xl) << "</text>\n"
      << "<text x=\"16\" y=\"" << Frame::H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << Frame::H / 2 << ")\">" << xml_escape(yl) << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
        o << "<text x=\"" << f.px(xv) << "\" y=\"" << Frame::H - Frame::B + 16 << "\" text-anchor=\"middle\">"
          << short6(xv) << "</text>\n"
          << "<text x=\"" << Frame::L - 6 << "\" y=\"" << f.py(yv) + 4 << "\" text-anchor=\"end\">" << short6(yv)
          << "</text>\n";
    }
}
} // namespace detail

/// Line chart; points must already be transformed (e.g. log2).
inline void write_line_svg(std::ostream &o, const std::vector<Series> &series, const std::string &title,
                           const std::string &xlabel, const std::string &ylabel) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto &s : series) {
        for (const auto &[x, y] : s.points) {
            if (std::isfinite(x) && std::isfinite(y)) {
                x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
            }
        }
    }
    if (!(x0 < x1)) {
        x0 = std::isfinite(x0) ? x0 - 1 : 0, x1 = x0 + 2;
    }
    if (!(y0 < y1)) {
        y0 = std::isfinite(y0) ? y0 - 1 : 0, y1 = y0 + 2;
    }
    const detail::Frame f{x0, x1, y0, y1};
    detail::svg_open(o, f, title, xlabel, ylabel);
    int row = 0;
    for (const auto &s : series) {
        o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
          << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
        for (const auto &[x, y] : s.points) {
            if (std::isfinite(x) && std::isfinite(y)) {
                o << f.px(x) << ',' << f.py(y) << ' ';
            }
        }
        o << "\"/>\n";
        o << "<text x=\"" << detail::Frame::W - 160 << "\" y=\"" << 44 + 16 * row << "\" fill=\"" << s.color << "\">"
          << detail::xml_escape(s.label) << "</text>\n";
        ++row;
    }
    o << "</svg>\n";
}

/// Bar chart of a pmf over y.
inline void write_bar_svg(std::ostream &o, std::span<const double> values, const std::string &title) {
    const double top = std::max(1e-12, *std::max_element(values.begin(), values.end()));
    const detail::Frame f{-0.5, static_cast<double>(values.size()) - 0.5, 0.0, top};
    detail::svg_open(o, f, title, "y", "probability");
    const double w = (detail::Frame::W - detail::Frame::L - detail::Frame::R) / static_cast<double>(values.size());
    for (std::size_t y = 0; y < values.size(); ++y) {
        const double px = f.px(static_cast<double>(y)) - 0.4 * w;
        o << "<rect x=\"" << px << "\" y=\"" << f.py(values[y]) << "\" width=\"" << 0.8 * w << "\" height=\""
          << f.py(0.0) - f.py(values[y]) << "\" fill=\"steelblue\"/>\n";
    }
    o << "</svg>\n";
}

/// Log-log error curves of a comparison report.
inline void write_report_svg(std::ostream &o, const ExperimentReport &r) {
    auto logs = [](const ErrorCurve &c, auto pick) {
        std::vector<std::pair<double, double>> p;
        for (const auto &e : c.entries) {
            const double v = pick(e);
            if (v > 0.0) {
                p.emplace_back(std::log2(e.samples), std::log2(v));
            }
        }
        return p;
    };
    std::vector<Series> s{
        {to_string(r.meta.estimator), logs(r.estimator_curve, [](const ErrorCurveEntry &e) { return e.err_p81; }),
         "crimson"},
        {"baseline", logs(r.baseline_curve, [](const ErrorCurveEntry &e) { return e.err_p81; }), "navy"},
        {"bound", logs(r.estimator_curve, [](const ErrorCurveEntry &e) { return e.bound; }), "gray", true},
    };
    write_line_svg(o, s, std::string(to_string(r.meta.flavor)) + " " + r.meta.dataset_id, "log2 samples",
                   "log2 error (81st percentile)");
}

inline void write_trajectory_svg(std::ostream &o, const std::vector<ErrorTrajectory> &trs) {
    const char *colors[] = {"crimson", "navy", "darkgreen", "darkorange", "purple"};
    std::vector<Series> s;
    for (std::size_t k = 0; k < trs.size(); ++k) {
        std::vector<std::pair<double, double>> p;
        for (const auto &[it, rate] : trs[k].points) {
            p.emplace_back(static_cast<double>(it), rate);
        }
        s.push_back({"M=" + std::to_string(trs[k].train_count), std::move(p), colors[k % 5]});
    }
    write_line_svg(o, s, "inherent error", "iterations", "error rate");
}

/// Writes `text` to dir/name, creating dir; returns the path.
inline std::string write_file(const std::filesystem::path &dir, const std::string &name, const std::string &text) {
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        throw DataError("cannot write '" + p.string() + "'");
    }
    f << text;
    return p.string();
}

} // namespace io
} // namespace sqkc

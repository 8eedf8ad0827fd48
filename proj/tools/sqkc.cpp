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
// sqkc: command-line driver for the classifiers, amplitude-estimation
// comparisons, exact QAE distributions and the inherent-error study.

#include "sqkc.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace sqkc;
namespace fs = std::filesystem;

constexpr int kUsage = 2;
constexpr int kCapacity = 3;

Flavor parse_flavor(const std::string &s) {
    if (s == "hc") return Flavor::HC;
    if (s == "sc") return Flavor::SC;
    if (s == "shc") return Flavor::SHC;
    if (s == "ssc") return Flavor::SSC;
    throw InvalidArgument("unknown classifier '" + s + "'");
}

Estimator parse_estimator(const std::string &s) {
    if (s == "qae") return Estimator::QAE;
    if (s == "qae-mle") return Estimator::QAE_MLE;
    if (s == "mlqae") return Estimator::MLQAE;
    if (s == "baseline") return Estimator::BASELINE;
    throw InvalidArgument("unknown estimator '" + s + "'");
}

// "A..B" or a single "A"
std::vector<std::size_t> parse_t_range(const std::string &s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const auto t = std::stoul(s);
            return t_span(t, t);
        }
        return t_span(std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2)));
    } catch (const std::logic_error &) {
        throw InvalidArgument("--t expects A..B, got '" + s + "'");
    }
}

// target for a dataset: explicit flag wins, else the dataset's own
Target pick_target(const std::string &flag, const NamedDataset &d) {
    if (flag == "one") return Target::PROB_ONE;
    if (flag == "zero") return Target::PROB_ZERO;
    return d.target;
}

class Timer {
  public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// All files are rendered in memory first so a failure never leaves partial output.
struct Outputs {
    std::vector<std::pair<std::string, std::string>> files;

    void add(std::string name, std::string text) { files.emplace_back(std::move(name), std::move(text)); }

    void flush(const std::string &dir, io::RunManifest manifest) {
        if (dir.empty()) {
            return;
        }
        for (const auto &[name, text] : files) {
            manifest.outputs.push_back((fs::path(dir) / name).string());
        }
        manifest.outputs.push_back((fs::path(dir) / "manifest.json").string());
        for (const auto &[name, text] : files) {
            io::write_file(dir, name, text);
        }
        io::write_file(dir, "manifest.json", manifest.to_json().dump(2) + "\n");
        for (const auto &p : manifest.outputs) {
            std::cout << "wrote " << p << "\n";
        }
    }
};

template <class F>
std::string render(F &&f) {
    std::ostringstream o;
    f(o);
    return o.str();
}

struct Common {
    std::string data = "builtin:eq16";
    std::string classifier = "ssc";
    std::string out;
    std::uint64_t seed = 42;
    bool svg = false;
    unsigned threads = 0;
    std::string target = "auto";
};

void add_common(CLI::App *cmd, Common &c, bool with_seed) {
    cmd->add_option("--data", c.data, "dataset: PATH (.csv/.json) or builtin:NAME")->capture_default_str();
    cmd->add_option("--classifier", c.classifier, "hc, sc, shc or ssc")
        ->check(CLI::IsMember({"hc", "sc", "shc", "ssc"}))
        ->capture_default_str();
    cmd->add_option("--out", c.out, "output directory (nothing written when omitted)");
    cmd->add_flag("--svg", c.svg, "also write SVG charts");
    if (with_seed) {
        cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
        cmd->add_option("--threads", c.threads, "worker threads (0 = hardware)")->capture_default_str();
    }
}

int cmd_classify(const Common &c, bool json) {
    Timer timer;
    const auto d = resolve_dataset(c.data);
    const Flavor f = parse_flavor(c.classifier);
    const auto o = classify(d.data, f);

    nlohmann::json j{{"dataset", d.id},          {"classifier", to_string(f)},        {"score", o.score},
                     {"pr_one", o.pr_one},       {"expectation", o.expectation},      {"label", o.predicted_label}};
    std::cout << "dataset     " << d.id << "\n"
              << "classifier  " << to_string(f) << "\n"
              << "score       " << io::short6(o.score) << "\n"
              << "Pr(1)       " << io::short6(o.pr_one) << "\n"
              << "<Z>         " << io::short6(o.expectation) << "\n"
              << "label       " << o.predicted_label << "\n";
    if (const auto ref = reference_for(d, f); ref && is_simplified(f)) {
        const double a = d.target == Target::PROB_ONE ? o.pr_one : o.pr_zero();
        std::cout << "a (" << to_string(d.target) << ")  " << io::short6(a) << "   reference " << io::short6(*ref)
                  << "\n";
        j["target"] = to_string(d.target);
        j["a"] = a;
        j["reference_a"] = *ref;
    }
    if (json) {
        std::cout << j.dump() << "\n";
    }
    Outputs out;
    out.add("classify.json", j.dump(2) + "\n");
    out.flush(c.out, {"classify", {{"data", c.data}, {"classifier", c.classifier}}, 0, {}, timer.seconds()});
    return 0;
}

struct CompareFlags {
    std::string estimator = "qae";
    std::string t = "1..10";
    std::optional<std::size_t> reps;
    std::size_t shots = 0;
    std::size_t grid = tol::kDefaultGridPoints;
};

ComparisonConfig comparison_config(const Common &c, const CompareFlags &k) {
    ComparisonConfig cfg;
    cfg.estimator = parse_estimator(k.estimator);
    cfg.t_range = parse_t_range(k.t);
    cfg.repetitions = k.reps ? *k.reps
                             : (cfg.estimator == Estimator::MLQAE || cfg.estimator == Estimator::QAE_MLE ? 1000
                                                                                                              : 2000);
    cfg.shots = k.shots;
    cfg.seed = c.seed;
    cfg.grid_points = k.grid;
    cfg.threads = c.threads;
    return cfg;
}

void print_report(const ExperimentReport &r) {
    std::cout << "# " << to_string(r.meta.flavor) << " " << to_string(r.meta.estimator) << " on " << r.meta.dataset_id
              << ", a = " << io::short6(r.meta.true_a) << " (" << to_string(r.meta.target) << ")\n"
              << "samples      err_p81      err_min      baseline     bound        within\n";
    for (std::size_t k = 0; k < r.estimator_curve.entries.size(); ++k) {
        const auto &e = r.estimator_curve.entries[k];
        const auto &b = r.baseline_curve.entries[k];
        std::printf("%-12s %-12s %-12s %-12s %-12s %-12s\n", io::short6(e.samples).c_str(),
                    io::short6(e.err_p81).c_str(), io::short6(e.err_min).c_str(), io::short6(b.err_p81).c_str(),
                    io::short6(e.bound).c_str(), io::short6(e.within_bound_fraction).c_str());
    }
    std::fflush(stdout);
    auto slope = [](const FitResult &f) { return f.degenerate ? std::string("degenerate") : io::short6(f.slope); };
    std::cout << "slope " << to_string(r.meta.estimator) << " " << slope(r.estimator_fit) << ", baseline "
              << slope(r.baseline_fit) << "\n";
    for (const auto &w : r.estimator_fit.warnings) {
        std::cout << "warning: " << w << "\n";
    }
    std::cout << "slope ratio " << (std::isfinite(r.slope_ratio) ? io::short6(r.slope_ratio) : "nan (degenerate fit)")
              << "\n";
}

void emit_report(const Common &c, const CompareFlags &k, const std::string &command, const ExperimentReport &r,
                 Outputs &out, double seconds) {
    out.add("report.csv", render([&](std::ostream &o) { io::write_report_csv(o, r); }));
    out.add("fit.json", io::report_json(r).dump(2) + "\n");
    if (c.svg) {
        out.add("report.svg", render([&](std::ostream &o) { io::write_report_svg(o, r); }));
    }
    nlohmann::json cfg{{"data", c.data},           {"classifier", c.classifier}, {"estimator", k.estimator},
                       {"t", k.t},                 {"reps", r.meta.repetitions}, {"shots", r.meta.shots},
                       {"grid", k.grid},           {"target", c.target}};
    out.flush(c.out, {command, cfg, c.seed, {}, seconds});
}

int cmd_compare(const Common &c, const CompareFlags &k) {
    Timer timer;
    auto cfg = comparison_config(c, k);
    const auto d = resolve_dataset(c.data);
    cfg.flavor = parse_flavor(c.classifier);
    if (!is_simplified(cfg.flavor)) {
        throw InvalidArgument("compare runs on shc or ssc");
    }
    cfg.dataset = d.data;
    cfg.dataset_id = d.id;
    cfg.target = pick_target(c.target, d);
    const auto r = run_comparison(cfg);
    print_report(r);
    Outputs out;
    emit_report(c, k, "compare", r, out, timer.seconds());
    return 0;
}

int cmd_average(const Common &c, const CompareFlags &k) {
    Timer timer;
    const auto cfg = comparison_config(c, k);
    std::vector<ExperimentReport> per;
    const auto avg = run_table_average(cfg, &per);
    for (const auto &r : per) {
        std::cout << r.meta.dataset_id << "  a = " << io::short6(r.meta.true_a) << "  ratio "
                  << (std::isfinite(r.slope_ratio) ? io::short6(r.slope_ratio) : "nan") << "\n";
    }
    print_report(avg);
    Outputs out;
    for (const auto &r : per) {
        out.add(r.meta.dataset_id + ".csv", render([&](std::ostream &o) { io::write_report_csv(o, r); }));
    }
    Common named = c;
    named.data = "builtin:table";
    emit_report(named, k, "average", avg, out, timer.seconds());
    return 0;
}

int cmd_distribution(const Common &c, std::size_t t, std::optional<double> synthetic_a) {
    Timer timer;
    StatePrepOracle oracle;
    std::string label;
    if (synthetic_a) {
        oracle = rotation_oracle(*synthetic_a);
        label = "a=" + io::short6(*synthetic_a);
    } else {
        const auto d = resolve_dataset(c.data);
        oracle = sqkc_oracle(d.data, parse_flavor(c.classifier), pick_target(c.target, d));
        label = d.id;
    }
    const auto pmf = qae_outcome_distribution(oracle, t);
    const double a = good_probability(oracle);
    const double e = io::pmf_expectation(pmf, t);
    std::cout << "# " << label << ", t = " << t << ", a = " << io::short6(a) << " (" << to_string(oracle.target)
              << ")\n"
              << "y  a_of_y    probability\n";
    for (std::size_t y = 0; y < pmf.size(); ++y) {
        if (pmf[y] < io::kNegligible) {
            continue;
        }
        std::printf("%-2zu %-9s %s\n", y, io::short6(qae_value(y, t)).c_str(), io::short6(pmf[y]).c_str());
    }
    std::fflush(stdout);
    std::cout << "expectation " << io::short6(e) << "\n";
    Outputs out;
    out.add("pmf.csv", render([&](std::ostream &o) { io::write_pmf_csv(o, pmf, t); }));
    if (c.svg) {
        out.add("pmf.svg", render([&](std::ostream &o) { io::write_bar_svg(o, pmf, label + ", t = " + std::to_string(t)); }));
    }
    nlohmann::json cfg{{"data", c.data}, {"classifier", c.classifier}, {"t", t}, {"target", c.target}};
    if (synthetic_a) {
        cfg["a"] = *synthetic_a;
    }
    cfg["expectation"] = e;
    out.flush(c.out, {"distribution", cfg, 0, {}, timer.seconds()});
    return 0;
}

struct InherentFlags {
    std::vector<std::size_t> features{0, 1};
    std::vector<std::string> classes{"setosa", "versicolor"};
    std::vector<std::size_t> train_counts{2, 4, 8};
    std::size_t iterations = 100000;
};

int cmd_inherent(const Common &c, const InherentFlags &k) {
    Timer timer;
    if (c.data.rfind("builtin:", 0) == 0) {
        throw DataError("inherent-error needs an Iris CSV via --data PATH");
    }
    if (k.features.size() != 2 || k.classes.size() != 2) {
        throw InvalidArgument("--features and --classes take exactly two values");
    }
    const auto pool = load_iris_pool(c.data, {k.features[0], k.features[1]}, {k.classes[0], k.classes[1]});
    InherentErrorConfig cfg;
    cfg.flavor = parse_flavor(c.classifier);
    cfg.train_counts = k.train_counts;
    cfg.iterations = k.iterations;
    cfg.seed = c.seed;
    cfg.threads = c.threads;
    const auto trs = inherent_error_study(pool, cfg);
    std::cout << "# " << to_string(cfg.flavor) << ", pool of " << pool.labels.size() << ", " << cfg.iterations
              << " iterations\n";
    for (const auto &tr : trs) {
        std::cout << "M = " << tr.train_count << "  error rate " << io::short6(tr.final_rate) << "\n";
    }
    Outputs out;
    out.add("trajectory.csv", render([&](std::ostream &o) { io::write_trajectory_csv(o, trs); }));
    if (c.svg) {
        out.add("trajectory.svg", render([&](std::ostream &o) { io::write_trajectory_svg(o, trs); }));
    }
    nlohmann::json cfgj{{"data", c.data},         {"classifier", c.classifier}, {"features", k.features},
                        {"classes", k.classes},   {"m", k.train_counts},        {"iterations", k.iterations}};
    out.flush(c.out, {"inherent-error", cfgj, c.seed, {}, timer.seconds()});
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simplified quantum kernel classifiers with amplitude estimation"};
    app.set_version_flag("--version", sqkc::kVersion);
    app.require_subcommand(1);

    Common common;
    bool json = false;
    auto *classify_cmd = app.add_subcommand("classify", "exact classifier outcome for one dataset");
    add_common(classify_cmd, common, false);
    classify_cmd->add_flag("--json", json, "also print the outcome as JSON");

    CompareFlags cf;
    auto add_compare = [&](CLI::App *cmd) {
        add_common(cmd, common, true);
        cmd->add_option("--estimator", cf.estimator, "qae, qae-mle, mlqae or baseline")
            ->check(CLI::IsMember({"qae", "qae-mle", "mlqae", "baseline"}))
            ->capture_default_str();
        cmd->add_option("--t", cf.t, "ancilla range A..B")->capture_default_str();
        cmd->add_option("--reps", cf.reps, "repetitions per sample size (default 2000; 1000 for qae-mle/mlqae)");
        cmd->add_option("--shots", cf.shots, "shots per estimate (default 1; 100 for qae-mle/mlqae)");
        cmd->add_option("--grid", cf.grid, "likelihood grid points")->capture_default_str();
        cmd->add_option("--target", common.target, "estimated probability: auto, one or zero")
            ->check(CLI::IsMember({"auto", "one", "zero"}))
            ->capture_default_str();
    };
    auto *compare_cmd = app.add_subcommand("compare", "error scaling of an estimator against direct sampling");
    add_compare(compare_cmd);
    auto *average_cmd = app.add_subcommand("average", "comparison averaged over the twelve table datasets");
    add_compare(average_cmd);

    std::size_t t = 2;
    std::optional<double> synthetic_a;
    auto *dist_cmd = app.add_subcommand("distribution", "exact QAE outcome distribution");
    add_common(dist_cmd, common, false);
    dist_cmd->add_option("--t", t, "number of counting qubits")->capture_default_str();
    dist_cmd->add_option("--a", synthetic_a, "use a single-qubit oracle with this probability instead of --data")
        ->check(CLI::Range(0.0, 1.0));
    dist_cmd->add_option("--target", common.target, "estimated probability: auto, one or zero")
        ->check(CLI::IsMember({"auto", "one", "zero"}))
        ->capture_default_str();

    InherentFlags inf;
    auto *inh_cmd = app.add_subcommand("inherent-error", "misclassification rate over random Iris draws");
    add_common(inh_cmd, common, true);
    inh_cmd->add_option("--features", inf.features, "two 0-based Iris feature columns")->delimiter(',')->capture_default_str();
    inh_cmd->add_option("--classes", inf.classes, "two species")->delimiter(',')->capture_default_str();
    inh_cmd->add_option("--m", inf.train_counts, "training-set sizes")->delimiter(',')->capture_default_str();
    inh_cmd->add_option("--iterations", inf.iterations, "iterations per size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(common, json);
        if (*compare_cmd) return cmd_compare(common, cf);
        if (*average_cmd) return cmd_average(common, cf);
        if (*dist_cmd) {
            if (common.classifier == "ssc" || common.classifier == "shc" || synthetic_a) {
                return cmd_distribution(common, t, synthetic_a);
            }
            throw InvalidArgument("distribution runs on shc or ssc");
        }
        if (*inh_cmd) return cmd_inherent(common, inf);
    } catch (const sqkc::CapacityError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapacity;
    } catch (const sqkc::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsage;
}

// Command-line driver: benchmark, sweep, boundary, predict, report.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dwknn/dwknn.hpp"
#include "dwknn/eval.hpp"
#include "dwknn/report_io.hpp"

namespace fs = std::filesystem;
using namespace dwknn;

namespace {

struct CommonOptions {
    std::vector<std::string> datasets;
    std::vector<std::string> methods = {"dwknn"};
    int folds = 5;
    std::uint64_t seed = 42;
    bool global_normalize = false;
    std::string data_dir = "data";
    std::string out_dir = "out";
    std::string label_column;  // empty: last column

    // classifier knobs
    int k = 5;
    int kv = 10;
    double gamma = 1.0;
    std::string pooling = "mean";
    std::string metric = "euclidean";
    double minkowski_p = 3.0;
};

// The six desk-scale sets benchmark --all runs by default.
const std::vector<std::string> kDefaultRoster = {
    "iris", "wine", "breast_cancer", "syn_balanced", "syn_imbalanced", "syn_overlap"};

// Generation seeds for the named synthetic sets are fixed so the datasets
// are stable across runs; --seed only moves the CV folds.
constexpr std::uint64_t kSyntheticSeed = 7;

MethodConfig make_method(const CommonOptions& opt, MethodKind kind) {
    MethodConfig m;
    m.kind = kind;
    m.dwknn.k = opt.k;
    m.dwknn.k_v = opt.kv;
    m.dwknn.gamma = opt.gamma;
    m.dwknn.pooling = pooling_from_string(opt.pooling);
    m.dwknn.metric = make_metric(metric_kind_from_string(opt.metric), opt.minkowski_p);
    m.dwknn.tie_seed = opt.seed;
    return m;
}

Dataset resolve_dataset(const std::string& name, const CommonOptions& opt) {
    SyntheticSpec spec;
    spec.seed = kSyntheticSeed;
    if (name == "syn_balanced") {
        spec.kind = SyntheticKind::balanced_blobs;
        return generate_synthetic(spec);
    }
    if (name == "syn_imbalanced") {
        spec.kind = SyntheticKind::imbalanced_blobs;
        spec.class_ratio = 3.6;
        return generate_synthetic(spec);
    }
    if (name == "syn_overlap") {
        spec.kind = SyntheticKind::overlap_blobs;
        return generate_synthetic(spec);
    }
    if (name == "moons") {
        spec.kind = SyntheticKind::moons;
        spec.n_samples = 400;
        spec.noise_scale = 0.15;
        return generate_synthetic(spec);
    }
    if (name == "blobs2d") {
        spec.kind = SyntheticKind::blobs_2d_imbalanced;
        spec.n_samples = 200;
        spec.class_ratio = 3.0;
        return generate_synthetic(spec);
    }
    if (name == "iris" || name == "wine" || name == "breast_cancer") {
        const std::string path = opt.data_dir + "/" + name + ".csv";
        const std::string label =
            name == "iris" ? "species" : (name == "wine" ? "cultivar" : "diagnosis");
        return load_csv(path, label);
    }
    // Anything else is a CSV path; default label column is the last one.
    if (!fs::exists(name)) {
        throw std::runtime_error("unknown dataset (and not a file): " + name);
    }
    std::string label = opt.label_column;
    if (label.empty()) {
        std::ifstream in(name);
        std::string header;
        std::getline(in, header);
        const auto pos = header.find_last_of(',');
        label = pos == std::string::npos ? header : header.substr(pos + 1);
        while (!label.empty() && (label.back() == '\r' || label.back() == '\n')) label.pop_back();
    }
    return load_csv(name, label);
}

std::vector<double> parse_query(const std::string& text) {
    std::vector<double> q;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        q.push_back(std::stod(cell));
    }
    return q;
}

int run_benchmark(const CommonOptions& opt) {
    fs::create_directories(opt.out_dir);

    std::vector<BenchmarkEntry> entries;
    std::vector<std::string> failures;
    for (const auto& ds_name : opt.datasets) {
        Dataset ds;
        try {
            ds = resolve_dataset(ds_name, opt);
        } catch (const std::exception& e) {
            failures.push_back(ds_name + ": " + e.what());
            continue;
        }
        for (const auto& method_name : opt.methods) {
            try {
                const MethodConfig method = make_method(opt, method_kind_from_string(method_name));
                CvOptions cv;
                cv.n_folds = opt.folds;
                cv.seed = opt.seed;
                cv.global_normalize = opt.global_normalize;
                CvResult res = run_cv(ds, method, cv);
                entries.push_back({std::move(res.scores), std::move(res.report)});
            } catch (const std::exception& e) {
                failures.push_back(ds_name + "/" + method_name + ": " + e.what());
            }
        }
    }

    write_results_csv(opt.out_dir + "/results.csv", entries);
    write_report_json(opt.out_dir + "/report.json", entries);
    const std::string table = render_accuracy_table(entries);
    std::ofstream(opt.out_dir + "/table.txt") << table;
    std::cout << table;

    if (!failures.empty()) {
        std::cerr << "failed runs:\n";
        for (const auto& f : failures) std::cerr << "  " << f << "\n";
        return 1;
    }
    return 0;
}

int run_sweep(const CommonOptions& opt, const std::string& axis, std::vector<std::string> values) {
    fs::create_directories(opt.out_dir);

    if (values.empty()) {
        if (axis == "k") values = {"1", "3", "5", "7", "9", "11", "15", "21", "31"};
        else if (axis == "k_v") values = {"3", "5", "7", "10", "15", "20", "30"};
        else if (axis == "gamma")
            values = {"0.1", "0.3", "0.5", "0.7", "1.0", "1.5", "2.0", "3.0", "5.0", "10.0"};
        else if (axis == "pooling") values = {"mean", "min", "median"};
        else if (axis == "metric") values = {"euclidean", "manhattan", "minkowski", "cosine"};
        else throw std::runtime_error("unknown sweep axis: " + axis);
    }

    std::ofstream out(opt.out_dir + "/sweep.csv");
    out << "axis,value,dataset,mean,std\n";
    std::vector<std::string> failures;
    for (const auto& ds_name : opt.datasets) {
        Dataset ds;
        try {
            ds = resolve_dataset(ds_name, opt);
        } catch (const std::exception& e) {
            failures.push_back(ds_name + ": " + e.what());
            continue;
        }
        for (const auto& value : values) {
            try {
                CommonOptions swept = opt;
                if (axis == "k") swept.k = std::stoi(value);
                else if (axis == "k_v") swept.kv = std::stoi(value);
                else if (axis == "gamma") swept.gamma = std::stod(value);
                else if (axis == "pooling") swept.pooling = value;
                else if (axis == "metric") swept.metric = value;
                else throw std::runtime_error("unknown sweep axis: " + axis);

                const MethodConfig method = make_method(swept, MethodKind::dwknn);
                CvOptions cv;
                cv.n_folds = opt.folds;
                cv.seed = opt.seed;
                cv.global_normalize = opt.global_normalize;
                const CvResult res = run_cv(ds, method, cv);
                char line[256];
                std::snprintf(line, sizeof(line), "%s,%s,%s,%.6f,%.6f\n", axis.c_str(),
                              value.c_str(), ds.name.c_str(), res.scores.mean, res.scores.stddev);
                out << line;
            } catch (const std::exception& e) {
                failures.push_back(ds_name + "@" + value + ": " + e.what());
            }
        }
    }
    if (!failures.empty()) {
        std::cerr << "failed runs:\n";
        for (const auto& f : failures) std::cerr << "  " << f << "\n";
        return 1;
    }
    return 0;
}

int run_boundary(const CommonOptions& opt) {
    fs::create_directories(opt.out_dir);

    std::ofstream out(opt.out_dir + "/boundary.csv");
    out << "x,y,method,predicted_class\n";
    for (const auto& ds_name : opt.datasets) {
        const Dataset ds = resolve_dataset(ds_name, opt);
        if (ds.n_cols != 2) {
            std::cerr << "boundary requires a 2-D dataset, got " << ds.n_cols << "-D: " << ds_name
                      << "\n";
            return 1;
        }

        const NormalizationParams norm = fit_zscore(ds);
        const Dataset ds_n = apply_zscore(ds, norm);

        // 200x200 grid over the data bounds plus a 10% margin per axis.
        double lo[2], hi[2];
        for (int j = 0; j < 2; ++j) {
            lo[j] = hi[j] = ds.at(0, j);
            for (std::size_t i = 1; i < ds.n_rows; ++i) {
                lo[j] = std::min(lo[j], ds.at(i, j));
                hi[j] = std::max(hi[j], ds.at(i, j));
            }
            const double margin = 0.1 * (hi[j] - lo[j]);
            lo[j] -= margin;
            hi[j] += margin;
        }
        constexpr int kGrid = 200;

        for (const auto& method_name : opt.methods) {
            const MethodConfig method = make_method(opt, method_kind_from_string(method_name));
            FittedModel fitted;
            const FittedModel* fitted_ptr = nullptr;
            if (method.kind == MethodKind::dwknn) {
                fitted = fit_normalized(ds_n, norm, method.dwknn);
                fitted_ptr = &fitted;
            }
            Dataset grid;
            grid.n_cols = 2;
            grid.n_rows = kGrid * kGrid;
            grid.class_count = ds.class_count;
            grid.features.reserve(grid.n_rows * 2);
            for (int gy = 0; gy < kGrid; ++gy) {
                for (int gx = 0; gx < kGrid; ++gx) {
                    const double x = lo[0] + (hi[0] - lo[0]) * gx / (kGrid - 1);
                    const double y = lo[1] + (hi[1] - lo[1]) * gy / (kGrid - 1);
                    grid.features.push_back(x);
                    grid.features.push_back(y);
                }
            }
            grid.labels.assign(grid.n_rows, 0);
            const Dataset grid_n = apply_zscore(grid, norm);
            const std::vector<int> pred = predict_with_method(ds_n, fitted_ptr, method, grid_n);
            for (std::size_t i = 0; i < grid.n_rows; ++i) {
                char line[160];
                std::snprintf(line, sizeof(line), "%.9g,%.9g,%s,%d\n", grid.at(i, 0),
                              grid.at(i, 1), method_name.c_str(), pred[i]);
                out << line;
            }
        }
        for (std::size_t i = 0; i < ds.n_rows; ++i) {
            char line[160];
            std::snprintf(line, sizeof(line), "%.9g,%.9g,train,%d\n", ds.at(i, 0), ds.at(i, 1),
                          ds.labels[i]);
            out << line;
        }
    }
    return 0;
}

int run_predict(const CommonOptions& opt, const std::string& model_path,
                const std::string& save_model_path, const std::string& query_text, bool explain) {
    FittedModel model;
    if (!model_path.empty()) {
        model = load_model(model_path);
    } else {
        if (opt.datasets.empty()) {
            std::cerr << "predict needs --model or --datasets\n";
            return 1;
        }
        const Dataset ds = resolve_dataset(opt.datasets[0], opt);
        model = fit(ds, make_method(opt, MethodKind::dwknn).dwknn);
    }
    if (!save_model_path.empty()) {
        save_model(model, save_model_path);
    }
    if (query_text.empty()) {
        if (save_model_path.empty()) {
            std::cerr << "predict needs --query (or --save-model)\n";
            return 1;
        }
        return 0;
    }

    const std::vector<double> raw = parse_query(query_text);
    const std::vector<double> q = apply_zscore(raw, model.norm);
    const auto [cls, table] = predict(model, q);

    const std::string label = cls < static_cast<int>(model.train.class_names.size())
                                  ? model.train.class_names[cls]
                                  : std::to_string(cls);
    if (explain) {
        nlohmann::json j;
        j["predicted_class"] = cls;
        j["predicted_label"] = label;
        j["decision_path"] = to_string(table.path);
        nlohmann::json scores = nlohmann::json::array();
        for (const auto& e : table.entries) {
            scores.push_back({{"class", e.class_id},
                              {"delta", e.delta},
                              {"w_dist", e.w_dist},
                              {"w_valid", e.w_valid},
                              {"score", e.score},
                              {"count", e.neighbor_count}});
        }
        j["scores"] = scores;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << label << "\n";
    }
    return 0;
}

int run_report(const CommonOptions& opt, const std::string& in_dir) {
    const std::vector<FoldScores> scores = read_results_csv(in_dir + "/results.csv");
    fs::create_directories(opt.out_dir);

    const auto comparisons = compare_methods("dwknn", scores);
    const std::string table = render_comparison_table("dwknn", comparisons);
    std::cout << table;
    std::ofstream(opt.out_dir + "/comparison.txt") << table;
    write_comparison_csv(opt.out_dir + "/comparison.csv", comparisons);
    write_comparison_by_dataset_csv(opt.out_dir + "/comparison_by_dataset.csv", comparisons);

    // Per-dataset summary straight from the fold scores.
    {
        std::ofstream out(opt.out_dir + "/summary.csv");
        out << "method,dataset,mean,std\n";
        for (const auto& fs_ : scores) {
            char line[256];
            std::snprintf(line, sizeof(line), "%s,%s,%.6f,%.6f\n", fs_.method.c_str(),
                          fs_.dataset.c_str(), fs_.mean, fs_.stddev);
            out << line;
        }
    }

    // Per-class tables ride along when the benchmark's report.json is there.
    const std::string report_path = in_dir + "/report.json";
    if (fs::exists(report_path)) {
        write_per_class_csv(opt.out_dir + "/per_class.csv", read_report_json(report_path));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double-weighted k-NN benchmark harness"};
    app.require_subcommand(1);

    CommonOptions opt;
    bool all_datasets = false;
    std::string sweep_axis = "gamma";
    std::vector<std::string> sweep_values;
    std::string model_path, save_model_path, query_text, in_dir = "out";
    bool explain = false;

    auto add_common = [&](CLI::App* cmd, bool with_methods = true) {
        cmd->add_option("--datasets", opt.datasets,
                        "Dataset names (iris, wine, breast_cancer, syn_balanced, syn_imbalanced, "
                        "syn_overlap, moons, blobs2d) or CSV paths")
            ->delimiter(',');
        if (with_methods) {
            cmd->add_option("--methods", opt.methods,
                            "dwknn, uniform, distance, kernel, ensemble, compactness")
                ->delimiter(',');
        }
        cmd->add_option("--folds", opt.folds, "Cross-validation folds");
        cmd->add_option("--seed", opt.seed, "Fold/tie-break seed");
        cmd->add_option("--k", opt.k, "Classification neighborhood size");
        cmd->add_option("--kv", opt.kv, "Validity neighborhood size");
        cmd->add_option("--gamma", opt.gamma, "Distance weight decay rate");
        cmd->add_option("--pooling", opt.pooling, "mean, min or median");
        cmd->add_option("--metric", opt.metric, "euclidean, manhattan, minkowski or cosine");
        cmd->add_option("--minkowski-p", opt.minkowski_p, "Minkowski exponent");
        cmd->add_flag("--global-normalize", opt.global_normalize,
                      "Fit z-score on the whole dataset instead of per training fold");
        cmd->add_option("--data-dir", opt.data_dir, "Directory with the bundled CSV fixtures");
        cmd->add_option("--out", opt.out_dir, "Output directory");
        cmd->add_option("--label-column", opt.label_column,
                        "Label column for CSV paths (default: last column)");
    };

    CLI::App* bench = app.add_subcommand("benchmark", "Cross-validate methods over datasets");
    add_common(bench);
    bench->add_flag("--all", all_datasets, "Run the six desk-scale datasets");

    CLI::App* sweep = app.add_subcommand("sweep", "Hyperparameter sweep for dwknn");
    add_common(sweep, false);
    sweep->add_option("--sweep-axis", sweep_axis, "k, k_v, gamma, pooling or metric");
    sweep->add_option("--sweep-values", sweep_values, "Values for the axis (default: paper grid)")
        ->delimiter(',');

    CLI::App* boundary = app.add_subcommand("boundary", "Decision grid over a 2-D dataset");
    add_common(boundary);

    CLI::App* pred = app.add_subcommand("predict", "Classify one query vector");
    add_common(pred, false);
    pred->add_option("--model", model_path, "Load a saved model instead of fitting");
    pred->add_option("--save-model", save_model_path, "Persist the fitted model");
    pred->add_option("--query", query_text, "Comma-separated raw feature values");
    pred->add_flag("--explain", explain, "Emit the per-class score table as JSON");

    CLI::App* report = app.add_subcommand("report", "Comparison tables from a benchmark run");
    report->add_option("--in", in_dir, "Directory with results.csv (+ report.json)");
    report->add_option("--out", opt.out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            if (all_datasets) opt.datasets = kDefaultRoster;
            if (opt.datasets.empty()) {
                std::cerr << "benchmark needs --datasets or --all\n";
                return 1;
            }
            return run_benchmark(opt);
        }
        if (sweep->parsed()) {
            if (opt.datasets.empty()) {
                std::cerr << "sweep needs --datasets\n";
                return 1;
            }
            return run_sweep(opt, sweep_axis, sweep_values);
        }
        if (boundary->parsed()) {
            if (opt.datasets.empty()) {
                std::cerr << "boundary needs --datasets\n";
                return 1;
            }
            return run_boundary(opt);
        }
        if (pred->parsed()) {
            return run_predict(opt, model_path, save_model_path, query_text, explain);
        }
        if (report->parsed()) {
            return run_report(opt, in_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "dwknn/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dwknn {
namespace {

using nlohmann::json;

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

void write_results_csv(const std::string& path, const std::vector<BenchmarkEntry>& entries) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "method,dataset,fold,accuracy\n";
    for (const auto& e : entries) {
        for (std::size_t f = 0; f < e.scores.per_fold_accuracy.size(); ++f) {
            out << e.scores.method << ',' << e.scores.dataset << ',' << f << ','
                << fmt(e.scores.per_fold_accuracy[f]) << "\n";
        }
    }
}

std::vector<FoldScores> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("method,dataset,fold,accuracy", 0) != 0) {
        throw std::runtime_error("malformed results csv: " + path);
    }

    std::map<std::pair<std::string, std::string>, FoldScores> grouped;
    std::vector<std::pair<std::string, std::string>> order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string method, dataset, fold, acc;
        if (!std::getline(ss, method, ',') || !std::getline(ss, dataset, ',') ||
            !std::getline(ss, fold, ',') || !std::getline(ss, acc, ',')) {
            throw std::runtime_error("malformed row in " + path + ": " + line);
        }
        auto key = std::make_pair(method, dataset);
        auto it = grouped.find(key);
        if (it == grouped.end()) {
            FoldScores fs;
            fs.method = method;
            fs.dataset = dataset;
            it = grouped.emplace(key, std::move(fs)).first;
            order.push_back(key);
        }
        it->second.per_fold_accuracy.push_back(std::stod(acc));
    }

    std::vector<FoldScores> out;
    for (const auto& key : order) {
        FoldScores& fs = grouped[key];
        const double n = static_cast<double>(fs.per_fold_accuracy.size());
        double mean = 0.0;
        for (double a : fs.per_fold_accuracy) mean += a;
        fs.mean = mean / n;
        double var = 0.0;
        for (double a : fs.per_fold_accuracy) var += (a - fs.mean) * (a - fs.mean);
        fs.stddev = std::sqrt(var / n);
        out.push_back(std::move(fs));
    }
    return out;
}

void write_report_json(const std::string& path, const std::vector<BenchmarkEntry>& entries) {
    json root;
    for (const auto& e : entries) {
        json cell;
        cell["folds"] = e.scores.per_fold_accuracy;
        cell["mean"] = e.scores.mean;
        cell["std"] = e.scores.stddev;
        json per_class = json::array();
        for (const auto& m : e.report.per_class) {
            per_class.push_back({{"class", m.class_id},
                                 {"precision", m.precision},
                                 {"recall", m.recall},
                                 {"f1", m.f1},
                                 {"support", m.support}});
        }
        cell["per_class"] = per_class;
        cell["confusion"] = e.report.confusion;
        root[e.scores.dataset][e.scores.method] = cell;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << root.dump(2) << "\n";
}

std::vector<BenchmarkEntry> read_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed report json " + path + ": " + e.what());
    }

    std::vector<BenchmarkEntry> entries;
    for (const auto& [dataset, methods] : root.items()) {
        for (const auto& [method, cell] : methods.items()) {
            BenchmarkEntry e;
            e.scores.method = method;
            e.scores.dataset = dataset;
            e.scores.per_fold_accuracy = cell.at("folds").get<std::vector<double>>();
            e.scores.mean = cell.at("mean").get<double>();
            e.scores.stddev = cell.at("std").get<double>();
            for (const auto& m : cell.at("per_class")) {
                ClassMetrics cm;
                cm.class_id = m.at("class").get<int>();
                cm.precision = m.at("precision").get<double>();
                cm.recall = m.at("recall").get<double>();
                cm.f1 = m.at("f1").get<double>();
                cm.support = m.at("support").get<int>();
                e.report.per_class.push_back(cm);
            }
            e.report.confusion = cell.at("confusion").get<std::vector<std::vector<int>>>();
            entries.push_back(std::move(e));
        }
    }
    return entries;
}

std::string render_accuracy_table(const std::vector<BenchmarkEntry>& entries) {
    std::set<std::string> methods_set;
    std::vector<std::string> datasets;
    std::map<std::string, std::map<std::string, const FoldScores*>> grid;
    for (const auto& e : entries) {
        methods_set.insert(e.scores.method);
        if (!grid.count(e.scores.dataset)) datasets.push_back(e.scores.dataset);
        grid[e.scores.dataset][e.scores.method] = &e.scores;
    }
    std::vector<std::string> methods(methods_set.begin(), methods_set.end());

    std::ostringstream out;
    out << "dataset";
    for (const auto& m : methods) out << "  " << m;
    out << "\n";
    for (const auto& ds : datasets) {
        double best = -1.0;
        for (const auto& m : methods) {
            auto it = grid[ds].find(m);
            if (it != grid[ds].end()) best = std::max(best, it->second->mean);
        }
        out << ds;
        for (const auto& m : methods) {
            auto it = grid[ds].find(m);
            if (it == grid[ds].end()) {
                out << "  -";
                continue;
            }
            const FoldScores& fs = *it->second;
            out << "  " << fmt(fs.mean, "%.3f") << "+-" << fmt(fs.stddev, "%.3f")
                << (fs.mean == best ? "*" : "");
        }
        out << "\n";
    }
    return out.str();
}

std::string render_comparison_table(const std::string& reference,
                                    const std::vector<MethodComparison>& comparisons) {
    std::ostringstream out;
    out << "baseline  W/T/L  avg_diff  t_p  wilcoxon_p  sig\n";
    for (const auto& c : comparisons) {
        const double p = c.t_test.degenerate ? 1.0 : c.t_test.p_value;
        const char* sig = c.t_test.degenerate ? "n/a" : (p < 0.001 ? "***" : (p < 0.05 ? "*" : "n.s."));
        out << reference << " vs " << c.baseline << "  " << c.wins << '/' << c.ties << '/'
            << c.losses << "  " << fmt(c.mean_diff, "%+.4f") << "  "
            << (c.t_test.degenerate ? "degenerate" : fmt(c.t_test.p_value, "%.4g")) << "  "
            << (c.wilcoxon.degenerate ? "degenerate" : fmt(c.wilcoxon.p_value, "%.4g")) << "  "
            << sig << "\n";
    }
    return out.str();
}

void write_comparison_csv(const std::string& path,
                          const std::vector<MethodComparison>& comparisons) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "baseline,wins,ties,losses,mean_diff,t_stat,t_p,t_degenerate,"
           "wilcoxon_w,wilcoxon_p,wilcoxon_degenerate\n";
    for (const auto& c : comparisons) {
        out << c.baseline << ',' << c.wins << ',' << c.ties << ',' << c.losses << ','
            << fmt(c.mean_diff) << ',' << fmt(c.t_test.statistic) << ','
            << (c.t_test.degenerate ? "" : fmt(c.t_test.p_value, "%.9g")) << ','
            << (c.t_test.degenerate ? 1 : 0) << ',' << fmt(c.wilcoxon.statistic) << ','
            << (c.wilcoxon.degenerate ? "" : fmt(c.wilcoxon.p_value, "%.9g")) << ','
            << (c.wilcoxon.degenerate ? 1 : 0) << "\n";
    }
}

void write_comparison_by_dataset_csv(const std::string& path,
                                     const std::vector<MethodComparison>& comparisons) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "baseline,dataset,mean_diff,t_stat,t_p,t_degenerate,"
           "wilcoxon_w,wilcoxon_p,wilcoxon_degenerate\n";
    for (const auto& c : comparisons) {
        for (const auto& d : c.by_dataset) {
            out << c.baseline << ',' << d.dataset << ',' << fmt(d.mean_diff) << ','
                << fmt(d.t_test.statistic) << ','
                << (d.t_test.degenerate ? "" : fmt(d.t_test.p_value, "%.9g")) << ','
                << (d.t_test.degenerate ? 1 : 0) << ',' << fmt(d.wilcoxon.statistic) << ','
                << (d.wilcoxon.degenerate ? "" : fmt(d.wilcoxon.p_value, "%.9g")) << ','
                << (d.wilcoxon.degenerate ? 1 : 0) << "\n";
        }
    }
}

void write_per_class_csv(const std::string& path, const std::vector<BenchmarkEntry>& entries) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "dataset,method,class,precision,recall,f1,support\n";
    for (const auto& e : entries) {
        for (const auto& m : e.report.per_class) {
            out << e.scores.dataset << ',' << e.scores.method << ',' << m.class_id << ','
                << fmt(m.precision) << ',' << fmt(m.recall) << ',' << fmt(m.f1) << ','
                << m.support << "\n";
        }
    }
}

}  // namespace dwknn

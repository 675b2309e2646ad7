#pragma once

#include <string>
#include <vector>

#include "dwknn/eval.hpp"

namespace dwknn {

/// One benchmark cell: the CV scores and pooled per-class report for a
/// (dataset, method) pair.
struct BenchmarkEntry {
    FoldScores scores;
    PerClassReport report;
};

/// Flat CSV with one row per (method, dataset, fold):
/// method,dataset,fold,accuracy
void write_results_csv(const std::string& path, const std::vector<BenchmarkEntry>& entries);
std::vector<FoldScores> read_results_csv(const std::string& path);

/// Nested JSON report: dataset -> method -> {folds, mean, std, per_class,
/// confusion}.
void write_report_json(const std::string& path, const std::vector<BenchmarkEntry>& entries);
std::vector<BenchmarkEntry> read_report_json(const std::string& path);

/// Text table in the accuracy-comparison layout: one row per dataset, one
/// column per method, mean+-std cells with '*' marking the best mean.
std::string render_accuracy_table(const std::vector<BenchmarkEntry>& entries);

/// Comparison table (reference vs each baseline) as text and CSV.
std::string render_comparison_table(const std::string& reference,
                                    const std::vector<MethodComparison>& comparisons);
void write_comparison_csv(const std::string& path,
                          const std::vector<MethodComparison>& comparisons);

/// Per-dataset paired tests behind each pooled comparison:
/// baseline,dataset,mean_diff,t_p,wilcoxon_p (+ degenerate flags)
void write_comparison_by_dataset_csv(const std::string& path,
                                     const std::vector<MethodComparison>& comparisons);

/// Per-class metrics for every (dataset, method):
/// dataset,method,class,precision,recall,f1,support
void write_per_class_csv(const std::string& path, const std::vector<BenchmarkEntry>& entries);

}  // namespace dwknn

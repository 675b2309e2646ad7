#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwknn/baselines.hpp"
#include "dwknn/dataset.hpp"
#include "dwknn/model.hpp"
#include "dwknn/stat_tests.hpp"

namespace dwknn {

enum class MethodKind { dwknn, uniform, distance, kernel, ensemble, compactness };

MethodKind method_kind_from_string(const std::string& name);
std::string to_string(MethodKind kind);

/// One classifier selection shared by the CV driver and the CLI. The dwknn
/// fields are ignored by the baselines, and ensemble_ks by everyone else.
struct MethodConfig {
    MethodKind kind = MethodKind::dwknn;
    DwknnConfig dwknn{};
    std::vector<int> ensemble_ks = {3, 5, 7, 9};

    int k() const { return dwknn.k; }
    const Metric& metric() const { return dwknn.metric; }
};

/// Per-fold accuracies for one (method, dataset) run. `stddev` is the
/// population standard deviation across folds.
struct FoldScores {
    std::string method;
    std::string dataset;
    std::vector<double> per_fold_accuracy;
    double mean = 0.0;
    double stddev = 0.0;
};

struct ClassMetrics {
    int class_id = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int support = 0;
};

/// Per-class precision/recall/F1 plus the C x C confusion matrix
/// (rows = truth, columns = prediction).
struct PerClassReport {
    std::vector<ClassMetrics> per_class;
    std::vector<std::vector<int>> confusion;

    int total() const;
    double accuracy() const;  // trace / total
};

struct CvOptions {
    int n_folds = 5;
    std::uint64_t seed = 42;
    bool global_normalize = false;  // fit z-score on the whole set, not per fold
};

struct CvResult {
    FoldScores scores;
    PerClassReport report;  // confusion pooled over test folds
};

/// Matching fraction. Throws on length mismatch or empty input.
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

/// Precision/recall/F1 with the 0-when-undefined convention.
PerClassReport per_class_metrics(const std::vector<int>& pred, const std::vector<int>& truth,
                                 int class_count);

/// Stratified k-fold cross-validation of one method on one dataset.
/// Normalization is fit per training fold unless opts.global_normalize;
/// folds are a pure function of (dataset, n_folds, seed), so runs with the
/// same seed share folds across methods.
CvResult run_cv(const Dataset& ds, const MethodConfig& method, const CvOptions& opts);

/// Classifies the test rows given an already-fitted context. Exposed so the
/// boundary and predict commands reuse the exact CV code path.
std::vector<int> predict_with_method(const Dataset& train_normalized,
                                     const FittedModel* fitted,  // non-null iff kind==dwknn
                                     const MethodConfig& method, const Dataset& test_normalized);

/// Head-to-head comparison of one reference method against every other
/// method present in `all`, pairing fold scores dataset by dataset.
struct DatasetComparison {
    std::string dataset;
    double mean_diff = 0.0;  // fold-level mean(reference - baseline)
    PairedTestResult t_test;
    PairedTestResult wilcoxon;
};

struct MethodComparison {
    std::string baseline;
    int wins = 0, ties = 0, losses = 0;  // by dataset mean, tie band 1e-9
    double mean_diff = 0.0;              // pooled fold-level mean(reference - baseline)
    PairedTestResult t_test;             // pooled over concatenated folds
    PairedTestResult wilcoxon;
    std::vector<DatasetComparison> by_dataset;
};

std::vector<MethodComparison> compare_methods(const std::string& reference,
                                              const std::vector<FoldScores>& all);

}  // namespace dwknn

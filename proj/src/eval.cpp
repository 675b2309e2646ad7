#include "dwknn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dwknn/dwknn.hpp"

namespace dwknn {
namespace {

constexpr double kWinTieBand = 1e-9;

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.n_rows = rows.size();
    out.n_cols = ds.n_cols;
    out.class_count = ds.class_count;
    out.feature_names = ds.feature_names;
    out.class_names = ds.class_names;
    out.name = ds.name;
    out.features.reserve(rows.size() * ds.n_cols);
    out.labels.reserve(rows.size());
    for (std::size_t r : rows) {
        const auto row = ds.row(r);
        out.features.insert(out.features.end(), row.begin(), row.end());
        out.labels.push_back(ds.labels[r]);
    }
    return out;
}

}  // namespace

MethodKind method_kind_from_string(const std::string& name) {
    if (name == "dwknn") return MethodKind::dwknn;
    if (name == "uniform") return MethodKind::uniform;
    if (name == "distance") return MethodKind::distance;
    if (name == "kernel") return MethodKind::kernel;
    if (name == "ensemble") return MethodKind::ensemble;
    if (name == "compactness") return MethodKind::compactness;
    throw std::invalid_argument("unknown method: " + name);
}

std::string to_string(MethodKind kind) {
    switch (kind) {
        case MethodKind::dwknn: return "dwknn";
        case MethodKind::uniform: return "uniform";
        case MethodKind::distance: return "distance";
        case MethodKind::kernel: return "kernel";
        case MethodKind::ensemble: return "ensemble";
        case MethodKind::compactness: return "compactness";
    }
    return "dwknn";
}

int PerClassReport::total() const {
    int t = 0;
    for (const auto& row : confusion) {
        for (int v : row) t += v;
    }
    return t;
}

double PerClassReport::accuracy() const {
    const int t = total();
    if (t == 0) return 0.0;
    int trace = 0;
    for (std::size_t c = 0; c < confusion.size(); ++c) trace += confusion[c][c];
    return static_cast<double>(trace) / static_cast<double>(t);
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument("accuracy: length mismatch");
    }
    if (pred.empty()) {
        throw std::invalid_argument("accuracy: empty input");
    }
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == truth[i]) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(pred.size());
}

PerClassReport per_class_metrics(const std::vector<int>& pred, const std::vector<int>& truth,
                                 int class_count) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument("per_class_metrics: length mismatch");
    }
    PerClassReport rep;
    rep.confusion.assign(class_count, std::vector<int>(class_count, 0));
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (truth[i] < 0 || truth[i] >= class_count || pred[i] < 0 || pred[i] >= class_count) {
            throw std::invalid_argument("per_class_metrics: label out of range");
        }
        ++rep.confusion[truth[i]][pred[i]];
    }

    for (int c = 0; c < class_count; ++c) {
        ClassMetrics m;
        m.class_id = c;
        int tp = rep.confusion[c][c];
        int fp = 0, fn = 0;
        for (int o = 0; o < class_count; ++o) {
            if (o == c) continue;
            fp += rep.confusion[o][c];
            fn += rep.confusion[c][o];
        }
        m.support = tp + fn;
        m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        m.f1 = (m.precision + m.recall) > 0.0
                   ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                   : 0.0;
        rep.per_class.push_back(m);
    }
    return rep;
}

std::vector<int> predict_with_method(const Dataset& train_normalized, const FittedModel* fitted,
                                     const MethodConfig& method, const Dataset& test_normalized) {
    std::vector<int> pred(test_normalized.n_rows);
    for (std::size_t i = 0; i < test_normalized.n_rows; ++i) {
        const auto q = test_normalized.row(i);
        switch (method.kind) {
            case MethodKind::dwknn:
                pred[i] = predict(*fitted, q, i).first;
                break;
            case MethodKind::uniform:
                pred[i] = predict_uniform(train_normalized, q, method.k(), method.metric());
                break;
            case MethodKind::distance:
                pred[i] = predict_distance(train_normalized, q, method.k(), method.metric());
                break;
            case MethodKind::kernel:
                pred[i] = predict_kernel(train_normalized, q, method.k(), method.metric());
                break;
            case MethodKind::ensemble:
                pred[i] = predict_ensemble(train_normalized, q, method.ensemble_ks, method.metric());
                break;
            case MethodKind::compactness:
                pred[i] = predict_compactness(train_normalized, q, method.k(), method.metric());
                break;
        }
    }
    return pred;
}

CvResult run_cv(const Dataset& ds, const MethodConfig& method, const CvOptions& opts) {
    const auto splits = stratified_split(ds, opts.n_folds, opts.seed);

    NormalizationParams global_norm;
    if (opts.global_normalize) {
        global_norm = fit_zscore(ds);
    }

    CvResult result;
    result.scores.method = to_string(method.kind);
    result.scores.dataset = ds.name;
    result.report.confusion.assign(ds.class_count, std::vector<int>(ds.class_count, 0));

    std::vector<int> all_pred, all_truth;
    for (const auto& split : splits) {
        Dataset train = take_rows(ds, split.train);
        Dataset test = take_rows(ds, split.test);

        const NormalizationParams norm = opts.global_normalize ? global_norm : fit_zscore(train);
        const Dataset train_n = apply_zscore(train, norm);
        const Dataset test_n = apply_zscore(test, norm);

        FittedModel fitted;
        const FittedModel* fitted_ptr = nullptr;
        if (method.kind == MethodKind::dwknn) {
            fitted = fit_normalized(train_n, norm, method.dwknn);
            fitted_ptr = &fitted;
        }

        const std::vector<int> pred = predict_with_method(train_n, fitted_ptr, method, test_n);
        result.scores.per_fold_accuracy.push_back(accuracy(pred, test.labels));
        all_pred.insert(all_pred.end(), pred.begin(), pred.end());
        all_truth.insert(all_truth.end(), test.labels.begin(), test.labels.end());
    }

    result.report = per_class_metrics(all_pred, all_truth, ds.class_count);

    const double f = static_cast<double>(result.scores.per_fold_accuracy.size());
    double mean = 0.0;
    for (double a : result.scores.per_fold_accuracy) mean += a;
    mean /= f;
    double var = 0.0;
    for (double a : result.scores.per_fold_accuracy) var += (a - mean) * (a - mean);
    result.scores.mean = mean;
    result.scores.stddev = std::sqrt(var / f);  // population, matches the table convention
    return result;
}

std::vector<MethodComparison> compare_methods(const std::string& reference,
                                              const std::vector<FoldScores>& all) {
    // dataset -> per-fold scores, grouped per method
    std::map<std::string, std::map<std::string, const FoldScores*>> by_method;
    for (const auto& fs : all) {
        by_method[fs.method][fs.dataset] = &fs;
    }
    const auto ref_it = by_method.find(reference);
    if (ref_it == by_method.end()) {
        return {};
    }
    const auto& ref_sets = ref_it->second;

    std::vector<MethodComparison> out;
    for (const auto& [method, datasets] : by_method) {
        if (method == reference) continue;
        MethodComparison cmp;
        cmp.baseline = method;

        std::vector<double> ref_pooled, base_pooled;
        for (const auto& [ds_name, ref_scores] : ref_sets) {
            const auto it = datasets.find(ds_name);
            if (it == datasets.end()) {
                throw std::invalid_argument("compare_methods: method " + method +
                                            " missing dataset " + ds_name);
            }
            const FoldScores& base_scores = *it->second;
            if (base_scores.per_fold_accuracy.size() != ref_scores->per_fold_accuracy.size()) {
                throw std::invalid_argument("compare_methods: fold mismatch on " + ds_name);
            }
            const double diff = ref_scores->mean - base_scores.mean;
            if (diff > kWinTieBand) ++cmp.wins;
            else if (diff < -kWinTieBand) ++cmp.losses;
            else ++cmp.ties;

            DatasetComparison per_ds;
            per_ds.dataset = ds_name;
            per_ds.mean_diff = diff;
            if (ref_scores->per_fold_accuracy.size() >= 2) {
                per_ds.t_test =
                    paired_t_test(ref_scores->per_fold_accuracy, base_scores.per_fold_accuracy);
                per_ds.wilcoxon = wilcoxon_signed_rank(ref_scores->per_fold_accuracy,
                                                       base_scores.per_fold_accuracy);
            }
            cmp.by_dataset.push_back(std::move(per_ds));

            ref_pooled.insert(ref_pooled.end(), ref_scores->per_fold_accuracy.begin(),
                              ref_scores->per_fold_accuracy.end());
            base_pooled.insert(base_pooled.end(), base_scores.per_fold_accuracy.begin(),
                               base_scores.per_fold_accuracy.end());
        }

        double mean = 0.0;
        for (std::size_t i = 0; i < ref_pooled.size(); ++i) mean += ref_pooled[i] - base_pooled[i];
        cmp.mean_diff = ref_pooled.empty() ? 0.0 : mean / static_cast<double>(ref_pooled.size());
        if (ref_pooled.size() >= 2) {
            cmp.t_test = paired_t_test(ref_pooled, base_pooled);
            cmp.wilcoxon = wilcoxon_signed_rank(ref_pooled, base_pooled);
        }
        out.push_back(std::move(cmp));
    }
    return out;
}

}  // namespace dwknn

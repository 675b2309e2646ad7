#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dwknn {

/// Labeled tabular dataset. Features are row-major N x d; labels are
/// contiguous class ids 0..C-1 with every id present at least once.
struct Dataset {
    std::vector<double> features;
    std::vector<int> labels;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    int class_count = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;  // id -> original label text
    std::string name;

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * n_cols, n_cols};
    }
    double at(std::size_t i, std::size_t j) const { return features[i * n_cols + j]; }
};

/// Per-feature z-score parameters. Features whose population stddev falls
/// below 1e-12 are flagged constant and carry a stddev sentinel of 1.0;
/// apply_zscore maps them to 0.
struct NormalizationParams {
    std::vector<double> means;
    std::vector<double> stddevs;
    std::vector<bool> constant;
};

enum class SyntheticKind {
    balanced_blobs,
    imbalanced_blobs,
    overlap_blobs,
    moons,
    blobs_2d_imbalanced,
};

/// Generator request. class_ratio is majority:minority (>= 1); noise_scale
/// scales the per-class spread (blob stddev, or moons jitter stddev).
struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::balanced_blobs;
    std::size_t n_samples = 1000;
    std::size_t n_features = 10;
    double class_ratio = 1.0;
    double noise_scale = 1.0;
    std::uint64_t seed = 42;
};

/// Loads a CSV with a header row, comma separator and '.' decimal point.
/// `label_column` is a header name or a 0-based column index rendered as
/// text. Labels are re-encoded to 0..C-1 in first-appearance order; the
/// mapping is recorded in Dataset::class_names.
/// Throws std::runtime_error on missing file, unparseable cells (with
/// row/column), an empty file, or a single-class label column.
Dataset load_csv(const std::string& path, const std::string& label_column);

/// Per-feature mean and population standard deviation. Requires N >= 2.
NormalizationParams fit_zscore(const Dataset& ds);

/// (x - mean) / stddev per feature; constant features map to 0.
Dataset apply_zscore(const Dataset& ds, const NormalizationParams& p);

/// Inverse of apply_zscore for non-constant features; constant features are
/// restored to their stored mean.
Dataset invert_zscore(const Dataset& ds, const NormalizationParams& p);

/// Normalizes one raw query vector with the given parameters.
std::vector<double> apply_zscore(std::span<const double> raw, const NormalizationParams& p);

/// Deterministic synthetic dataset; identical specs produce byte-identical
/// datasets. Requires n_samples >= 2 * class_count, class_ratio >= 1,
/// noise_scale >= 0.
Dataset generate_synthetic(const SyntheticSpec& spec);

struct FoldSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Stratified k-fold partition: test folds are disjoint, exhaustive, and
/// per-class counts deviate from proportional by at most one. Requires every
/// class to have at least n_folds members.
std::vector<FoldSplit> stratified_split(const Dataset& ds, int n_folds, std::uint64_t seed);

}  // namespace dwknn

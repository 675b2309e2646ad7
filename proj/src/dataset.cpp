#include "dwknn/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "dwknn/rng.hpp"

namespace dwknn {
namespace {

constexpr double kConstantStddevFloor = 1e-12;

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& cell, std::size_t row, std::size_t col) {
    const std::string t = trim(cell);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw std::runtime_error("load_csv: unparseable cell at row " + std::to_string(row) +
                                 ", column " + std::to_string(col) + ": '" + cell + "'");
    }
    return v;
}

// Majority count for a two-class split at the given ratio; the minority gets
// the remainder. ratio r means sizes n*r/(r+1) and n/(r+1), rounded.
std::size_t majority_count(std::size_t n, double ratio) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratio / (ratio + 1.0)));
}

void validate_spec(const SyntheticSpec& spec) {
    if (spec.class_ratio < 1.0) {
        throw std::invalid_argument("generate_synthetic: class_ratio must be >= 1");
    }
    if (spec.noise_scale < 0.0) {
        throw std::invalid_argument("generate_synthetic: noise_scale must be >= 0");
    }
    if (spec.n_samples < 4 || spec.n_features == 0) {
        throw std::invalid_argument("generate_synthetic: need n_samples >= 2*classes and n_features >= 1");
    }
}

// Two Gaussian blobs in n_features dimensions, class mean offset along the
// first coordinate. `separation` is in units of the shared isotropic stddev.
Dataset make_blobs(const SyntheticSpec& spec, double separation, std::size_t dims,
                   std::string name) {
    validate_spec(spec);
    const std::size_t n0 = majority_count(spec.n_samples, spec.class_ratio);
    const std::size_t n1 = spec.n_samples - n0;
    if (n0 < 2 || n1 < 2) {
        throw std::invalid_argument("generate_synthetic: each class needs at least 2 samples");
    }
    const double sigma = spec.noise_scale;

    Dataset ds;
    ds.n_rows = spec.n_samples;
    ds.n_cols = dims;
    ds.class_count = 2;
    ds.name = std::move(name);
    ds.features.resize(ds.n_rows * ds.n_cols);
    ds.labels.resize(ds.n_rows);
    for (std::size_t j = 0; j < dims; ++j) {
        ds.feature_names.push_back("f" + std::to_string(j));
    }
    ds.class_names = {"0", "1"};

    Rng rng(spec.seed);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        const bool minority = i >= n0;
        ds.labels[i] = minority ? 1 : 0;
        for (std::size_t j = 0; j < dims; ++j) {
            double v = rng.next_normal() * sigma;
            if (minority && j == 0) v += separation * sigma;
            ds.features[i * dims + j] = v;
        }
    }
    return ds;
}

// Interleaved half circles with Gaussian jitter; evenly spaced arc angles so
// the noiseless geometry is exact.
Dataset make_moons(const SyntheticSpec& spec) {
    validate_spec(spec);
    const std::size_t n0 = majority_count(spec.n_samples, spec.class_ratio);
    const std::size_t n1 = spec.n_samples - n0;
    if (n0 < 2 || n1 < 2) {
        throw std::invalid_argument("generate_synthetic: each class needs at least 2 samples");
    }

    Dataset ds;
    ds.n_rows = spec.n_samples;
    ds.n_cols = 2;
    ds.class_count = 2;
    ds.name = "moons";
    ds.features.resize(ds.n_rows * 2);
    ds.labels.resize(ds.n_rows);
    ds.feature_names = {"x", "y"};
    ds.class_names = {"0", "1"};

    Rng rng(spec.seed);
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < n0; ++i) {
        const double t = n0 > 1 ? pi * static_cast<double>(i) / static_cast<double>(n0 - 1) : 0.0;
        ds.features[i * 2 + 0] = std::cos(t) + rng.next_normal() * spec.noise_scale;
        ds.features[i * 2 + 1] = std::sin(t) + rng.next_normal() * spec.noise_scale;
        ds.labels[i] = 0;
    }
    for (std::size_t i = 0; i < n1; ++i) {
        const double t = n1 > 1 ? pi * static_cast<double>(i) / static_cast<double>(n1 - 1) : 0.0;
        const std::size_t r = n0 + i;
        ds.features[r * 2 + 0] = 1.0 - std::cos(t) + rng.next_normal() * spec.noise_scale;
        ds.features[r * 2 + 1] = 1.0 - std::sin(t) - 0.5 + rng.next_normal() * spec.noise_scale;
        ds.labels[r] = 1;
    }
    return ds;
}

// Well separated 2-D pair for boundary demos: majority at the origin,
// minority offset along the diagonal by `separation` stddevs per coordinate.
Dataset make_blobs_2d(const SyntheticSpec& spec, double separation) {
    validate_spec(spec);
    const std::size_t n0 = majority_count(spec.n_samples, spec.class_ratio);
    const std::size_t n1 = spec.n_samples - n0;
    if (n0 < 2 || n1 < 2) {
        throw std::invalid_argument("generate_synthetic: each class needs at least 2 samples");
    }
    const double sigma = spec.noise_scale;

    Dataset ds;
    ds.n_rows = spec.n_samples;
    ds.n_cols = 2;
    ds.class_count = 2;
    ds.name = "blobs_2d_imbalanced";
    ds.features.resize(ds.n_rows * 2);
    ds.labels.resize(ds.n_rows);
    ds.feature_names = {"x", "y"};
    ds.class_names = {"0", "1"};

    Rng rng(spec.seed);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        const bool minority = i >= n0;
        const double off = minority ? separation * sigma : 0.0;
        ds.features[i * 2 + 0] = off + rng.next_normal() * sigma;
        ds.features[i * 2 + 1] = off + rng.next_normal() * sigma;
        ds.labels[i] = minority ? 1 : 0;
    }
    return ds;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_csv: cannot open file: " + path);
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("load_csv: empty file: " + path);
    }
    const auto header = split_line(line);
    if (header.empty()) {
        throw std::runtime_error("load_csv: empty header row: " + path);
    }

    // Resolve the label column by name first, then as a numeric index.
    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (trim(header[j]) == label_column) {
            label_idx = j;
            break;
        }
    }
    if (label_idx == header.size()) {
        char* end = nullptr;
        const long v = std::strtol(label_column.c_str(), &end, 10);
        if (end == label_column.c_str() + label_column.size() && v >= 0 &&
            static_cast<std::size_t>(v) < header.size()) {
            label_idx = static_cast<std::size_t>(v);
        }
    }
    if (label_idx == header.size()) {
        throw std::runtime_error("load_csv: label column not found: " + label_column);
    }

    Dataset ds;
    ds.n_cols = header.size() - 1;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != label_idx) ds.feature_names.push_back(trim(header[j]));
    }
    {
        // Dataset name from the file stem.
        auto slash = path.find_last_of("/\\");
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = base.find_last_of('.');
        ds.name = dot == std::string::npos ? base : base.substr(0, dot);
    }

    std::unordered_map<std::string, int> label_ids;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("load_csv: row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == label_idx) continue;
            ds.features.push_back(parse_real(cells[j], row, j));
        }
        const std::string lab = trim(cells[label_idx]);
        auto [it, inserted] = label_ids.emplace(lab, static_cast<int>(ds.class_names.size()));
        if (inserted) ds.class_names.push_back(lab);
        ds.labels.push_back(it->second);
    }

    ds.n_rows = ds.labels.size();
    ds.class_count = static_cast<int>(ds.class_names.size());
    if (ds.n_rows == 0) {
        throw std::runtime_error("load_csv: no data rows in " + path);
    }
    if (ds.class_count < 2) {
        throw std::runtime_error("load_csv: single-class dataset: " + path);
    }
    return ds;
}

NormalizationParams fit_zscore(const Dataset& ds) {
    if (ds.n_rows < 2) {
        throw std::invalid_argument("fit_zscore: need at least 2 rows");
    }
    NormalizationParams p;
    p.means.assign(ds.n_cols, 0.0);
    p.stddevs.assign(ds.n_cols, 0.0);
    p.constant.assign(ds.n_cols, false);

    const double n = static_cast<double>(ds.n_rows);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        for (std::size_t j = 0; j < ds.n_cols; ++j) {
            p.means[j] += ds.at(i, j);
        }
    }
    for (std::size_t j = 0; j < ds.n_cols; ++j) p.means[j] /= n;

    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        for (std::size_t j = 0; j < ds.n_cols; ++j) {
            const double t = ds.at(i, j) - p.means[j];
            p.stddevs[j] += t * t;
        }
    }
    for (std::size_t j = 0; j < ds.n_cols; ++j) {
        p.stddevs[j] = std::sqrt(p.stddevs[j] / n);  // population
        if (p.stddevs[j] < kConstantStddevFloor) {
            p.stddevs[j] = 1.0;
            p.constant[j] = true;
        }
    }
    return p;
}

Dataset apply_zscore(const Dataset& ds, const NormalizationParams& p) {
    if (p.means.size() != ds.n_cols) {
        throw std::invalid_argument("apply_zscore: dimension mismatch");
    }
    Dataset out = ds;
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        for (std::size_t j = 0; j < ds.n_cols; ++j) {
            out.features[i * ds.n_cols + j] =
                p.constant[j] ? 0.0 : (ds.at(i, j) - p.means[j]) / p.stddevs[j];
        }
    }
    return out;
}

Dataset invert_zscore(const Dataset& ds, const NormalizationParams& p) {
    if (p.means.size() != ds.n_cols) {
        throw std::invalid_argument("invert_zscore: dimension mismatch");
    }
    Dataset out = ds;
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        for (std::size_t j = 0; j < ds.n_cols; ++j) {
            out.features[i * ds.n_cols + j] =
                p.constant[j] ? p.means[j] : ds.at(i, j) * p.stddevs[j] + p.means[j];
        }
    }
    return out;
}

std::vector<double> apply_zscore(std::span<const double> raw, const NormalizationParams& p) {
    if (raw.size() != p.means.size()) {
        throw std::invalid_argument("apply_zscore: dimension mismatch");
    }
    std::vector<double> out(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        out[j] = p.constant[j] ? 0.0 : (raw[j] - p.means[j]) / p.stddevs[j];
    }
    return out;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
    switch (spec.kind) {
        case SyntheticKind::balanced_blobs:
            return make_blobs(spec, 2.0, spec.n_features, "syn_balanced");
        case SyntheticKind::imbalanced_blobs:
            return make_blobs(spec, 1.2, spec.n_features, "syn_imbalanced");
        case SyntheticKind::overlap_blobs:
            return make_blobs(spec, 1.2, spec.n_features, "syn_overlap");
        case SyntheticKind::moons:
            return make_moons(spec);
        case SyntheticKind::blobs_2d_imbalanced:
            return make_blobs_2d(spec, 10.0);
    }
    throw std::invalid_argument("generate_synthetic: unknown kind");
}

std::vector<FoldSplit> stratified_split(const Dataset& ds, int n_folds, std::uint64_t seed) {
    if (n_folds < 2) {
        throw std::invalid_argument("stratified_split: need at least 2 folds");
    }

    std::vector<std::vector<std::size_t>> by_class(ds.class_count);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        by_class[ds.labels[i]].push_back(i);
    }
    for (int c = 0; c < ds.class_count; ++c) {
        if (by_class[c].size() < static_cast<std::size_t>(n_folds)) {
            throw std::invalid_argument("stratified_split: class " + std::to_string(c) +
                                        " has fewer members than folds");
        }
    }

    Rng rng(seed);
    std::vector<std::vector<std::size_t>> fold_members(n_folds);
    for (int c = 0; c < ds.class_count; ++c) {
        auto& idx = by_class[c];
        rng.shuffle(idx);
        // Stripe each shuffled class across the folds; per-fold class counts
        // deviate from proportional by at most one.
        for (std::size_t j = 0; j < idx.size(); ++j) {
            fold_members[j % n_folds].push_back(idx[j]);
        }
    }

    std::vector<FoldSplit> splits(n_folds);
    for (int f = 0; f < n_folds; ++f) {
        auto& test = fold_members[f];
        std::sort(test.begin(), test.end());
        splits[f].test = test;
        for (int g = 0; g < n_folds; ++g) {
            if (g == f) continue;
            splits[f].train.insert(splits[f].train.end(), fold_members[g].begin(),
                                   fold_members[g].end());
        }
        std::sort(splits[f].train.begin(), splits[f].train.end());
    }
    return splits;
}

}  // namespace dwknn

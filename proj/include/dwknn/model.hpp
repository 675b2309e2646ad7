#pragma once

#include <cstdint>
#include <string>

#include "dwknn/dataset.hpp"
#include "dwknn/distance.hpp"

namespace dwknn {

enum class Pooling { mean, min, median };

Pooling pooling_from_string(const std::string& name);
std::string to_string(Pooling p);

/// Classifier configuration; defaults follow the evaluation protocol
/// (k=5, K_v=10, gamma=1, mean pooling, euclidean).
struct DwknnConfig {
    int k = 5;
    int k_v = 10;
    double gamma = 1.0;
    Pooling pooling = Pooling::mean;
    Metric metric{};
    std::uint64_t tie_seed = 42;  // seeds the random tie-break stream
};

/// Fraction of the k_v nearest neighbors of training point `i` (itself
/// excluded) that share its label. Requires k_v <= N - 1.
double compute_validity(const Dataset& train, int i, int k_v, const Metric& m);

/// Immutable fit result: normalized training data plus one validity score
/// per training point, each an exact multiple of 1/k_v.
struct FittedModel {
    Dataset train;  // already normalized
    std::vector<double> validities;
    DwknnConfig config;
    NormalizationParams norm;
};

/// Normalizes the dataset (z-score fit on it) and precomputes all validity
/// scores. Requires N >= max(k, k_v) + 1 and at least two classes.
FittedModel fit(const Dataset& ds, const DwknnConfig& cfg);

/// As `fit`, but with normalization parameters supplied by the caller
/// (e.g. fit on a different split under global normalization).
FittedModel fit_normalized(const Dataset& normalized, const NormalizationParams& norm,
                           const DwknnConfig& cfg);

/// Versioned flat-file persistence: one header line with the config and
/// normalization parameters, then N CSV rows of normalized features, label
/// and validity. Field order is documented in the README.
void save_model(const FittedModel& model, const std::string& path);
FittedModel load_model(const std::string& path);

}  // namespace dwknn

#pragma once

#include <span>
#include <string>
#include <vector>

#include "dwknn/dataset.hpp"
#include "dwknn/distance.hpp"

namespace dwknn {

/// Comparison classifiers sharing the exact neighbor search. All predictors
/// break class-weight ties by lower class id, so training-row order never
/// affects a prediction.

/// Majority vote among the k nearest.
int predict_uniform(const Dataset& train, std::span<const double> query, int k, const Metric& m);

/// Inverse-distance vote (w = 1/d). A neighbor closer than 1e-12 wins
/// outright (exact-match rule).
int predict_distance(const Dataset& train, std::span<const double> query, int k, const Metric& m);

/// Gaussian kernel vote (w = exp(-d^2)).
int predict_kernel(const Dataset& train, std::span<const double> query, int k, const Metric& m);

/// Soft-voting ensemble: vote fractions per k averaged over ks.
int predict_ensemble(const Dataset& train, std::span<const double> query,
                     const std::vector<int>& ks, const Metric& m);

/// Compactness weighting: class weight k_c / (1 + sigma_c) with sigma_c the
/// population stddev of that class's neighbor distances (0 when k_c == 1).
int predict_compactness(const Dataset& train, std::span<const double> query, int k,
                        const Metric& m);

}  // namespace dwknn

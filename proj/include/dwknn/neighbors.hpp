#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dwknn/dataset.hpp"
#include "dwknn/distance.hpp"

namespace dwknn {

/// The k nearest training points for one query, sorted by nondecreasing
/// distance with ties broken by lower training index. `validities` is empty
/// until a fitted model fills it in.
struct NeighborSet {
    std::vector<int> indices;
    std::vector<double> distances;
    std::vector<int> labels;
    std::vector<double> validities;

    std::size_t size() const { return indices.size(); }
};

/// Exact brute-force k-NN over the training rows. `exclude`, when set, names
/// one training index that is never returned (leave-one-out searches).
/// Requires 1 <= k <= N (N-1 with exclude).
NeighborSet knn_search(const Dataset& train, std::span<const double> query, int k,
                       const Metric& m, std::optional<int> exclude = std::nullopt);

}  // namespace dwknn

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dwknn/model.hpp"
#include "dwknn/neighbors.hpp"

namespace dwknn {

enum class DecisionPath { score_argmax, tie_low_delta, tie_random, fallback_majority };

std::string to_string(DecisionPath path);

/// One row of the per-query explanation: the pooled distance, both weights
/// and the multiplicative score for a class present among the k neighbors.
struct ClassScore {
    int class_id = 0;
    int neighbor_count = 0;
    double delta = 0.0;    // pooled distance
    double w_dist = 0.0;   // exp(-gamma * delta)
    double w_valid = 0.0;  // mean neighbor validity
    double score = 0.0;    // w_dist * w_valid
};

/// Interpretability artifact returned with every prediction: per-class
/// scores (only classes present among the neighbors) plus which rule decided.
struct ClassScoreTable {
    std::vector<ClassScore> entries;  // ordered by class id
    int predicted = -1;
    DecisionPath path = DecisionPath::score_argmax;

    const ClassScore* find(int class_id) const;
};

/// Pooled per-class distance over a neighbor set (mean, min or median; the
/// median of an even count is the average of the two middle values).
std::map<int, double> pool_distances(const NeighborSet& neighbors, Pooling pooling);

/// exp(-gamma * delta): 1 exactly at delta == 0, strictly decreasing.
double distance_weight(double delta, double gamma);

/// Per-class arithmetic mean of neighbor validities.
std::map<int, double> validity_weight(const NeighborSet& neighbors);

/// Classifies one pre-normalized query. `query_index` selects the random
/// tie-break stream so batch runs are reproducible; single calls use 0.
/// Decision order: argmax score; all-zero scores fall back to majority vote
/// (ties by lower class id); tied top scores prefer the lowest pooled
/// distance, then a seeded random choice.
std::pair<int, ClassScoreTable> predict(const FittedModel& model, std::span<const double> query,
                                        std::uint64_t query_index = 0);

/// Row-wise predict over an M x d row-major matrix; element i uses
/// tie-break stream i. Equivalent to M independent predict calls.
std::vector<int> predict_batch(const FittedModel& model, const double* queries, std::size_t m,
                               std::size_t dim, std::vector<ClassScoreTable>* tables = nullptr);

}  // namespace dwknn

#include "dwknn/dwknn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwknn/rng.hpp"

namespace dwknn {
namespace {

constexpr double kDeltaTieTolerance = 1e-12;

int majority_vote(const NeighborSet& neighbors) {
    std::map<int, int> counts;
    for (int lab : neighbors.labels) ++counts[lab];
    int best = -1, best_count = -1;
    for (const auto& [cls, count] : counts) {  // map order -> lower id wins ties
        if (count > best_count) {
            best = cls;
            best_count = count;
        }
    }
    return best;
}

}  // namespace

std::string to_string(DecisionPath path) {
    switch (path) {
        case DecisionPath::score_argmax: return "score_argmax";
        case DecisionPath::tie_low_delta: return "tie_low_delta";
        case DecisionPath::tie_random: return "tie_random";
        case DecisionPath::fallback_majority: return "fallback_majority";
    }
    return "score_argmax";
}

const ClassScore* ClassScoreTable::find(int class_id) const {
    for (const auto& e : entries) {
        if (e.class_id == class_id) return &e;
    }
    return nullptr;
}

std::map<int, double> pool_distances(const NeighborSet& neighbors, Pooling pooling) {
    std::map<int, std::vector<double>> grouped;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        grouped[neighbors.labels[i]].push_back(neighbors.distances[i]);
    }

    std::map<int, double> pooled;
    for (auto& [cls, dists] : grouped) {
        switch (pooling) {
            case Pooling::mean: {
                double sum = 0.0;
                for (double d : dists) sum += d;
                pooled[cls] = sum / static_cast<double>(dists.size());
                break;
            }
            case Pooling::min:
                pooled[cls] = *std::min_element(dists.begin(), dists.end());
                break;
            case Pooling::median: {
                std::sort(dists.begin(), dists.end());
                const std::size_t n = dists.size();
                pooled[cls] = (n % 2 == 1) ? dists[n / 2]
                                           : 0.5 * (dists[n / 2 - 1] + dists[n / 2]);
                break;
            }
        }
    }
    return pooled;
}

double distance_weight(double delta, double gamma) {
    return std::exp(-gamma * delta);
}

std::map<int, double> validity_weight(const NeighborSet& neighbors) {
    std::map<int, double> sums;
    std::map<int, int> counts;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        sums[neighbors.labels[i]] += neighbors.validities[i];
        ++counts[neighbors.labels[i]];
    }
    std::map<int, double> out;
    for (const auto& [cls, sum] : sums) {
        out[cls] = sum / static_cast<double>(counts[cls]);
    }
    return out;
}

std::pair<int, ClassScoreTable> predict(const FittedModel& model, std::span<const double> query,
                                        std::uint64_t query_index) {
    if (query.size() != model.train.n_cols) {
        throw std::invalid_argument("predict: query dimension mismatch");
    }
    const DwknnConfig& cfg = model.config;

    NeighborSet nb = knn_search(model.train, query, cfg.k, cfg.metric);
    nb.validities.resize(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
        nb.validities[i] = model.validities[nb.indices[i]];
    }

    const auto deltas = pool_distances(nb, cfg.pooling);
    const auto wv = validity_weight(nb);

    ClassScoreTable table;
    std::map<int, int> counts;
    for (int lab : nb.labels) ++counts[lab];
    for (const auto& [cls, delta] : deltas) {
        ClassScore entry;
        entry.class_id = cls;
        entry.neighbor_count = counts[cls];
        entry.delta = delta;
        entry.w_dist = distance_weight(delta, cfg.gamma);
        entry.w_valid = wv.at(cls);
        entry.score = entry.w_dist * entry.w_valid;
        table.entries.push_back(entry);
    }

    double best_score = 0.0;
    for (const auto& e : table.entries) best_score = std::max(best_score, e.score);

    if (best_score == 0.0) {
        table.predicted = majority_vote(nb);
        table.path = DecisionPath::fallback_majority;
        return {table.predicted, table};
    }

    std::vector<const ClassScore*> top;
    for (const auto& e : table.entries) {
        if (e.score == best_score) top.push_back(&e);
    }

    if (top.size() == 1) {
        table.predicted = top[0]->class_id;
        table.path = DecisionPath::score_argmax;
        return {table.predicted, table};
    }

    // Tied top scores: prefer the lowest pooled distance.
    double min_delta = top[0]->delta;
    for (const auto* e : top) min_delta = std::min(min_delta, e->delta);
    std::vector<const ClassScore*> closest;
    for (const auto* e : top) {
        if (std::abs(e->delta - min_delta) <= kDeltaTieTolerance) closest.push_back(e);
    }

    if (closest.size() == 1) {
        table.predicted = closest[0]->class_id;
        table.path = DecisionPath::tie_low_delta;
        return {table.predicted, table};
    }

    // Still tied: seeded random choice from the per-query stream.
    Rng rng(mix_seed(cfg.tie_seed, query_index));
    table.predicted = closest[rng.next_below(closest.size())]->class_id;
    table.path = DecisionPath::tie_random;
    return {table.predicted, table};
}

std::vector<int> predict_batch(const FittedModel& model, const double* queries, std::size_t m,
                               std::size_t dim, std::vector<ClassScoreTable>* tables) {
    std::vector<int> out(m);
    if (tables) tables->resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto [cls, table] = predict(model, {queries + i * dim, dim}, i);
        out[i] = cls;
        if (tables) (*tables)[i] = std::move(table);
    }
    return out;
}

}  // namespace dwknn

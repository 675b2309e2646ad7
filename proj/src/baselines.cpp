#include "dwknn/baselines.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dwknn/neighbors.hpp"

namespace dwknn {
namespace {

constexpr double kExactMatchThreshold = 1e-12;

// argmax over a class->weight map, lower class id on ties. Map iteration is
// id-ordered, which gives the tie rule for free.
int argmax_class(const std::map<int, double>& weights) {
    int best = -1;
    double best_w = -1.0;
    for (const auto& [cls, w] : weights) {
        if (w > best_w) {
            best = cls;
            best_w = w;
        }
    }
    return best;
}

}  // namespace

int predict_uniform(const Dataset& train, std::span<const double> query, int k, const Metric& m) {
    const NeighborSet nb = knn_search(train, query, k, m);
    std::map<int, double> votes;
    for (int lab : nb.labels) votes[lab] += 1.0;
    return argmax_class(votes);
}

int predict_distance(const Dataset& train, std::span<const double> query, int k, const Metric& m) {
    const NeighborSet nb = knn_search(train, query, k, m);
    for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb.distances[i] < kExactMatchThreshold) return nb.labels[i];
    }
    std::map<int, double> votes;
    for (std::size_t i = 0; i < nb.size(); ++i) {
        votes[nb.labels[i]] += 1.0 / nb.distances[i];
    }
    return argmax_class(votes);
}

int predict_kernel(const Dataset& train, std::span<const double> query, int k, const Metric& m) {
    const NeighborSet nb = knn_search(train, query, k, m);
    std::map<int, double> votes;
    for (std::size_t i = 0; i < nb.size(); ++i) {
        votes[nb.labels[i]] += std::exp(-nb.distances[i] * nb.distances[i]);
    }
    return argmax_class(votes);
}

int predict_ensemble(const Dataset& train, std::span<const double> query,
                     const std::vector<int>& ks, const Metric& m) {
    if (ks.empty()) {
        throw std::invalid_argument("predict_ensemble: empty k list");
    }
    std::map<int, double> avg_prob;
    for (int k : ks) {
        const NeighborSet nb = knn_search(train, query, k, m);
        std::map<int, int> counts;
        for (int lab : nb.labels) ++counts[lab];
        for (const auto& [cls, count] : counts) {
            avg_prob[cls] += static_cast<double>(count) / static_cast<double>(k);
        }
    }
    for (auto& [cls, p] : avg_prob) p /= static_cast<double>(ks.size());
    return argmax_class(avg_prob);
}

int predict_compactness(const Dataset& train, std::span<const double> query, int k,
                        const Metric& m) {
    const NeighborSet nb = knn_search(train, query, k, m);
    std::map<int, std::vector<double>> grouped;
    for (std::size_t i = 0; i < nb.size(); ++i) {
        grouped[nb.labels[i]].push_back(nb.distances[i]);
    }
    std::map<int, double> weights;
    for (const auto& [cls, dists] : grouped) {
        const double n = static_cast<double>(dists.size());
        double mean = 0.0;
        for (double d : dists) mean += d;
        mean /= n;
        double var = 0.0;
        for (double d : dists) var += (d - mean) * (d - mean);
        const double sigma = dists.size() > 1 ? std::sqrt(var / n) : 0.0;
        weights[cls] = n / (1.0 + sigma);
    }
    return argmax_class(weights);
}

}  // namespace dwknn

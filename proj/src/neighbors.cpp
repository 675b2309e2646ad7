#include "dwknn/neighbors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dwknn {

NeighborSet knn_search(const Dataset& train, std::span<const double> query, int k,
                       const Metric& m, std::optional<int> exclude) {
    const std::size_t n = train.n_rows;
    const std::size_t available = exclude.has_value() ? n - 1 : n;
    if (k < 1 || static_cast<std::size_t>(k) > available) {
        throw std::invalid_argument("knn_search: k out of range");
    }
    if (query.size() != train.n_cols) {
        throw std::invalid_argument("knn_search: query dimension mismatch");
    }

    std::vector<double> dist(n);
    distance_to_rows(m, query, train.features.data(), n, train.n_cols, dist.data());

    std::vector<int> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (exclude && static_cast<int>(i) == *exclude) continue;
        order.push_back(static_cast<int>(i));
    }

    const auto closer = [&dist](int a, int b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return a < b;  // deterministic tie rule
    };
    std::partial_sort(order.begin(), order.begin() + k, order.end(), closer);

    NeighborSet out;
    out.indices.assign(order.begin(), order.begin() + k);
    out.distances.resize(k);
    out.labels.resize(k);
    for (int i = 0; i < k; ++i) {
        out.distances[i] = dist[out.indices[i]];
        out.labels[i] = train.labels[out.indices[i]];
    }
    return out;
}

}  // namespace dwknn

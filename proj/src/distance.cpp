#include "dwknn/distance.hpp"

#include <atomic>
#include <cstdio>
#include <stdexcept>

#include "dwknn/kernels.hpp"

namespace dwknn {
namespace {

std::atomic<bool> warned_zero_cosine{false};

void warn_zero_cosine_once() {
    if (!warned_zero_cosine.exchange(true)) {
        std::fprintf(stderr,
                     "dwknn: cosine distance with a zero vector; using neutral value 1.0\n");
    }
}

bool is_zero_vector(std::span<const double> v) {
    for (double x : v) {
        if (x != 0.0) return false;
    }
    return true;
}

}  // namespace

Metric make_metric(MetricKind kind, double p) {
    if (kind == MetricKind::minkowski && p < 1.0) {
        throw std::invalid_argument("minkowski metric requires p >= 1");
    }
    return Metric{kind, p};
}

MetricKind metric_kind_from_string(const std::string& name) {
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "manhattan") return MetricKind::manhattan;
    if (name == "minkowski") return MetricKind::minkowski;
    if (name == "cosine") return MetricKind::cosine;
    throw std::invalid_argument("unknown metric: " + name);
}

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::manhattan: return "manhattan";
        case MetricKind::minkowski: return "minkowski";
        case MetricKind::cosine: return "cosine";
    }
    return "euclidean";
}

double distance(const Metric& m, std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance: dimension mismatch");
    }
    double out = 0.0;
    distance_to_rows(m, a, b.data(), 1, b.size(), &out);
    return out;
}

void distance_to_rows(const Metric& m, std::span<const double> query,
                      const double* rows, std::size_t n_rows, std::size_t dim,
                      double* out) {
    if (query.size() != dim) {
        throw std::invalid_argument("distance_to_rows: dimension mismatch");
    }
    const auto& backend = kernels::active_backend();
    switch (m.kind) {
        case MetricKind::euclidean:
            backend.euclidean(query.data(), rows, n_rows, dim, out);
            break;
        case MetricKind::manhattan:
            backend.manhattan(query.data(), rows, n_rows, dim, out);
            break;
        case MetricKind::minkowski:
            backend.minkowski(query.data(), rows, n_rows, dim, m.p, out);
            break;
        case MetricKind::cosine:
            if (is_zero_vector(query)) warn_zero_cosine_once();
            backend.cosine(query.data(), rows, n_rows, dim, out);
            break;
    }
}

}  // namespace dwknn

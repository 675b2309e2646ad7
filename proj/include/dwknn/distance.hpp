#pragma once

#include <span>
#include <string>

namespace dwknn {

enum class MetricKind { euclidean, manhattan, minkowski, cosine };

/// Distance function selector. `p` is only meaningful for minkowski.
struct Metric {
    MetricKind kind = MetricKind::euclidean;
    double p = 3.0;
};

Metric make_metric(MetricKind kind, double p = 3.0);

/// Parses "euclidean" | "manhattan" | "minkowski" | "cosine".
/// Throws std::invalid_argument on unknown names.
MetricKind metric_kind_from_string(const std::string& name);
std::string to_string(MetricKind kind);

/// Distance between two equal-length vectors.
///
/// Always >= 0 and exactly symmetric in (a, b). The three norms are zero at
/// a == b; cosine returns 1 - cos(a, b) in [0, 2], with the zero-vector case
/// mapped to the neutral value 1.0 (a warning is logged once per process).
/// Throws std::invalid_argument on dimension mismatch.
double distance(const Metric& m, std::span<const double> a, std::span<const double> b);

/// Distances from `query` to `n_rows` contiguous row-major rows.
/// Routes through the runtime-selected kernel backend; bit-identical to
/// calling `distance` per row on the same backend.
void distance_to_rows(const Metric& m, std::span<const double> query,
                      const double* rows, std::size_t n_rows, std::size_t dim,
                      double* out);

}  // namespace dwknn

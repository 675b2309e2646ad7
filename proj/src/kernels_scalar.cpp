#include "dwknn/kernels.hpp"

#include <cmath>

// Scalar reference kernels. These define the semantics every SIMD backend
// must reproduce: per-row left-to-right accumulation over the feature
// dimension, so results are exactly reproducible run to run.

namespace dwknn::kernels {
namespace {

inline double euclidean_pair(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double t = a[j] - b[j];
        acc += t * t;
    }
    return std::sqrt(acc);
}

inline double manhattan_pair(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        acc += std::fabs(a[j] - b[j]);
    }
    return acc;
}

inline double minkowski_pair(const double* a, const double* b, std::size_t d, double p) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        acc += std::pow(std::fabs(a[j] - b[j]), p);
    }
    return std::pow(acc, 1.0 / p);
}

inline double cosine_pair(const double* a, const double* b, std::size_t d) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        dot += a[j] * b[j];
        na += a[j] * a[j];
        nb += b[j] * b[j];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

void euclidean_rows(const double* q, const double* rows, std::size_t nr,
                    std::size_t d, double* out) {
    for (std::size_t i = 0; i < nr; ++i) {
        out[i] = euclidean_pair(q, rows + i * d, d);
    }
}

void manhattan_rows(const double* q, const double* rows, std::size_t nr,
                    std::size_t d, double* out) {
    for (std::size_t i = 0; i < nr; ++i) {
        out[i] = manhattan_pair(q, rows + i * d, d);
    }
}

void minkowski_rows(const double* q, const double* rows, std::size_t nr,
                    std::size_t d, double p, double* out) {
    for (std::size_t i = 0; i < nr; ++i) {
        out[i] = minkowski_pair(q, rows + i * d, d, p);
    }
}

void cosine_rows(const double* q, const double* rows, std::size_t nr,
                 std::size_t d, double* out) {
    for (std::size_t i = 0; i < nr; ++i) {
        out[i] = cosine_pair(q, rows + i * d, d);
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend backend{
        "scalar", euclidean_rows, manhattan_rows, minkowski_rows, cosine_rows};
    return backend;
}

}  // namespace dwknn::kernels

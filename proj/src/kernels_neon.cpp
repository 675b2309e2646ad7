#if defined(__aarch64__)

#include "dwknn/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

// NEON kernels, 2 doubles per iteration with scalar remainder loops.
// Same contract as the AVX2 backend: equivalence-tested against scalar.

namespace dwknn::kernels {
namespace {

inline double euclidean_pair(const double* a, const double* b, std::size_t d) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= d; j += 2) {
        const float64x2_t t = vsubq_f64(vld1q_f64(a + j), vld1q_f64(b + j));
        acc = vfmaq_f64(acc, t, t);
    }
    double sum = vaddvq_f64(acc);
    for (; j < d; ++j) {
        const double t = a[j] - b[j];
        sum += t * t;
    }
    return std::sqrt(sum);
}

inline double manhattan_pair(const double* a, const double* b, std::size_t d) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= d; j += 2) {
        const float64x2_t t = vsubq_f64(vld1q_f64(a + j), vld1q_f64(b + j));
        acc = vaddq_f64(acc, vabsq_f64(t));
    }
    double sum = vaddvq_f64(acc);
    for (; j < d; ++j) {
        sum += std::fabs(a[j] - b[j]);
    }
    return sum;
}

inline double minkowski3_pair(const double* a, const double* b, std::size_t d) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= d; j += 2) {
        const float64x2_t t = vsubq_f64(vld1q_f64(a + j), vld1q_f64(b + j));
        const float64x2_t at = vabsq_f64(t);
        acc = vfmaq_f64(acc, vmulq_f64(at, at), at);
    }
    double sum = vaddvq_f64(acc);
    for (; j < d; ++j) {
        const double t = std::fabs(a[j] - b[j]);
        sum += t * t * t;
    }
    return std::cbrt(sum);
}

inline double minkowski_pair(const double* a, const double* b, std::size_t d, double p) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        acc += std::pow(std::fabs(a[j] - b[j]), p);
    }
    return std::pow(acc, 1.0 / p);
}

inline double cosine_pair(const double* a, const double* b, std::size_t d) {
    float64x2_t dot = vdupq_n_f64(0.0);
    float64x2_t na = vdupq_n_f64(0.0);
    float64x2_t nb = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= d; j += 2) {
        const float64x2_t va = vld1q_f64(a + j);
        const float64x2_t vb = vld1q_f64(b + j);
        dot = vfmaq_f64(dot, va, vb);
        na = vfmaq_f64(na, va, va);
        nb = vfmaq_f64(nb, vb, vb);
    }
    double sdot = vaddvq_f64(dot), sna = vaddvq_f64(na), snb = vaddvq_f64(nb);
    for (; j < d; ++j) {
        sdot += a[j] * b[j];
        sna += a[j] * a[j];
        snb += b[j] * b[j];
    }
    if (sna == 0.0 || snb == 0.0) return 1.0;
    return 1.0 - sdot / (std::sqrt(sna) * std::sqrt(snb));
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
    if (p == 3.0) {
        for (std::size_t i = 0; i < nr; ++i) {
            out[i] = minkowski3_pair(q, rows + i * d, d);
        }
        return;
    }
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

const Backend& neon_backend() {
    static const Backend backend{
        "neon", euclidean_rows, manhattan_rows, minkowski_rows, cosine_rows};
    return backend;
}

}  // namespace dwknn::kernels

#endif  // __aarch64__

#if defined(__x86_64__) || defined(_M_X64)

#include "dwknn/kernels.hpp"

#include <immintrin.h>

#include <cmath>

// AVX2+FMA kernels, 4 doubles per iteration with scalar remainder loops.
// Horizontal reduction order differs from the scalar reference, so values
// may differ in the last ulps; the equivalence tests pin the tolerance.

namespace dwknn::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign_mask, v);
}

inline double euclidean_pair(const double* a, const double* b, std::size_t d) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= d; j += 4) {
        const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
        acc = _mm256_fmadd_pd(t, t, acc);
    }
    double sum = hsum(acc);
    for (; j < d; ++j) {
        const double t = a[j] - b[j];
        sum += t * t;
    }
    return std::sqrt(sum);
}

inline double manhattan_pair(const double* a, const double* b, std::size_t d) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= d; j += 4) {
        const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
        acc = _mm256_add_pd(acc, abs_pd(t));
    }
    double sum = hsum(acc);
    for (; j < d; ++j) {
        sum += std::fabs(a[j] - b[j]);
    }
    return sum;
}

// p == 3 is the only exponent worth vectorising: |t|^3 needs no pow call.
inline double minkowski3_pair(const double* a, const double* b, std::size_t d) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= d; j += 4) {
        const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
        const __m256d at = abs_pd(t);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(at, at), at, acc);
    }
    double sum = hsum(acc);
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
    __m256d dot = _mm256_setzero_pd();
    __m256d na = _mm256_setzero_pd();
    __m256d nb = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= d; j += 4) {
        const __m256d va = _mm256_loadu_pd(a + j);
        const __m256d vb = _mm256_loadu_pd(b + j);
        dot = _mm256_fmadd_pd(va, vb, dot);
        na = _mm256_fmadd_pd(va, va, na);
        nb = _mm256_fmadd_pd(vb, vb, nb);
    }
    double sdot = hsum(dot), sna = hsum(na), snb = hsum(nb);
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

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Backend& avx2_backend() {
    static const Backend backend{
        "avx2", euclidean_rows, manhattan_rows, minkowski_rows, cosine_rows};
    return backend;
}

}  // namespace dwknn::kernels

#endif  // x86_64

#pragma once

#include <cstddef>
#include <string>

// Low-level distance kernels. Each backend provides the same set of
// query-vs-rows loops; the scalar backend is the reference, SIMD backends
// are equivalence-tested against it. Selection happens once at runtime
// (see active_backend), overridable with the DWKNN_KERNEL environment
// variable ("scalar", "avx2", "neon", "auto").

namespace dwknn::kernels {

// One query against nr row-major rows of width d; out receives nr distances.
using PairwiseFn = void (*)(const double* query, const double* rows,
                            std::size_t nr, std::size_t d, double* out);
// Minkowski carries the exponent.
using MinkowskiFn = void (*)(const double* query, const double* rows,
                             std::size_t nr, std::size_t d, double p, double* out);

struct Backend {
    const char* name;
    PairwiseFn euclidean;
    PairwiseFn manhattan;
    MinkowskiFn minkowski;
    PairwiseFn cosine;  // 1 - dot/(|a||b|), zero vectors mapped to 1.0
};

const Backend& scalar_backend();

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available();
const Backend& avx2_backend();
#endif

#if defined(__aarch64__)
const Backend& neon_backend();
#endif

/// Backend chosen at first use from CPU features and DWKNN_KERNEL.
const Backend& active_backend();

/// Name of the backend active_backend() resolved to.
std::string active_backend_name();

}  // namespace dwknn::kernels

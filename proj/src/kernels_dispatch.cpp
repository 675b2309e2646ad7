#include "dwknn/kernels.hpp"

#include <cstdlib>
#include <string>

namespace dwknn::kernels {
namespace {

const Backend& select_backend() {
    const char* env = std::getenv("DWKNN_KERNEL");
    const std::string want = env ? env : "auto";
    if (want == "scalar") return scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "avx2") return avx2_backend();  // caller asked for it explicitly
    if (want == "auto" && avx2_available()) return avx2_backend();
#endif
#if defined(__aarch64__)
    if (want == "neon" || want == "auto") return neon_backend();
#endif
    return scalar_backend();
}

}  // namespace

const Backend& active_backend() {
    static const Backend& backend = select_backend();
    return backend;
}

std::string active_backend_name() { return active_backend().name; }

}  // namespace dwknn::kernels

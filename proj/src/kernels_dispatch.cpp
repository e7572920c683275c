#include "cmbethe/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <vector>

namespace cmbethe::kernels {

namespace {

const Backend* pick_default() {
#if defined(CMBETHE_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_backend;
#endif
    return &scalar_backend;
}

const Backend* resolve() {
    if (const char* env = std::getenv("CM_BETHE_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_backend;
#if defined(CMBETHE_HAVE_AVX2)
        if (std::strcmp(env, "avx2") == 0) return &avx2_backend;
#endif
    }
    return pick_default();
}

const Backend*& current() {
    static const Backend* b = resolve();
    return b;
}

}  // namespace

const Backend& active() { return *current(); }

bool force(const char* name) {
    if (std::strcmp(name, "scalar") == 0) {
        current() = &scalar_backend;
        return true;
    }
#if defined(CMBETHE_HAVE_AVX2)
    if (std::strcmp(name, "avx2") == 0) {
        if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) return false;
        current() = &avx2_backend;
        return true;
    }
#endif
    return false;
}

void matmul(int n, const Complex* a, const Complex* b, Complex* c) {
    const Backend& k = active();
    std::size_t len = static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
        Complex* crow = c + static_cast<std::size_t>(i) * len;
        for (int j = 0; j < n; ++j) crow[j] = Complex{0.0, 0.0};
        const Complex* arow = a + static_cast<std::size_t>(i) * len;
        for (int kk = 0; kk < n; ++kk) {
            k.axpy(len, arow[kk], b + static_cast<std::size_t>(kk) * len, crow);
        }
    }
}

}  // namespace cmbethe::kernels

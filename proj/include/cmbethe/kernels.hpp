#pragma once
// Low-level complex-vector kernels with runtime backend selection.
//
// Every dense operation in the library (matrix products, LU elimination,
// bilinear forms) funnels through these primitives. A scalar reference
// implementation always exists; on x86-64 an AVX2/FMA variant is selected at
// startup when the CPU supports it. The environment variable CM_BETHE_KERNEL
// ("scalar" or "avx2") forces a backend, which the equivalence tests use to
// compare both paths on identical inputs.

#include <complex>
#include <cstddef>

namespace cmbethe::kernels {

using Complex = std::complex<double>;

struct Backend {
    const char* name;
    // y[i] += alpha * x[i]
    void (*axpy)(std::size_t len, Complex alpha, const Complex* x, Complex* y);
    // x[i] *= alpha
    void (*scale)(std::size_t len, Complex alpha, Complex* x);
    // sum_i x[i] * y[i]   (bilinear, no conjugation)
    Complex (*dot_u)(std::size_t len, const Complex* x, const Complex* y);
    // sum_i conj(x[i]) * y[i]
    Complex (*dot_c)(std::size_t len, const Complex* x, const Complex* y);
};

extern const Backend scalar_backend;
#if defined(CMBETHE_HAVE_AVX2)
extern const Backend avx2_backend;
#endif

// Active backend (resolved once; honors CM_BETHE_KERNEL).
const Backend& active();

// Force a backend by name ("scalar", "avx2"); returns false if unavailable.
bool force(const char* name);

// c = a * b for square row-major n x n matrices (c must not alias a or b).
// Built on axpy row updates so it exercises the selected backend.
void matmul(int n, const Complex* a, const Complex* b, Complex* c);

}  // namespace cmbethe::kernels

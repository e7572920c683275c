#include "cmbethe/kernels.hpp"

#include <immintrin.h>

// AVX2/FMA variants. std::complex<double> is two contiguous doubles (re, im),
// so one 256-bit vector holds two complex values. The complex product uses the
// permute + fmaddsub recipe: even lanes get re*re - im*im, odd lanes re*im + im*re.

namespace cmbethe::kernels {

namespace {

inline __m256d cmul_by_scalar(__m256d v, __m256d ar, __m256d ai) {
    __m256d vswap = _mm256_permute_pd(v, 0x5);
    return _mm256_fmaddsub_pd(v, ar, _mm256_mul_pd(vswap, ai));
}

void axpy_avx2(std::size_t len, Complex alpha, const Complex* x, Complex* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d v = _mm256_loadu_pd(xs + 2 * i);
        __m256d acc = _mm256_loadu_pd(ys + 2 * i);
        _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(acc, cmul_by_scalar(v, ar, ai)));
    }
    for (; i < len; ++i) y[i] += alpha * x[i];
}

void scale_avx2(std::size_t len, Complex alpha, Complex* x) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    double* xs = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d v = _mm256_loadu_pd(xs + 2 * i);
        _mm256_storeu_pd(xs + 2 * i, cmul_by_scalar(v, ar, ai));
    }
    for (; i < len; ++i) x[i] *= alpha;
}

// Elementwise complex product of vector lanes: a[i] * b[i] for two lanes.
inline __m256d cmul_lanes(__m256d a, __m256d b) {
    __m256d are = _mm256_movedup_pd(a);
    __m256d aim = _mm256_permute_pd(a, 0xF);
    __m256d bswap = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap));
}

inline Complex reduce_pairs(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return Complex{out[0], out[1]};
}

Complex dot_u_avx2(std::size_t len, const Complex* x, const Complex* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d a = _mm256_loadu_pd(xs + 2 * i);
        __m256d b = _mm256_loadu_pd(ys + 2 * i);
        acc = _mm256_add_pd(acc, cmul_lanes(a, b));
    }
    Complex r = reduce_pairs(acc);
    for (; i < len; ++i) r += x[i] * y[i];
    return r;
}

Complex dot_c_avx2(std::size_t len, const Complex* x, const Complex* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d a = _mm256_xor_pd(_mm256_loadu_pd(xs + 2 * i), conj_mask);
        __m256d b = _mm256_loadu_pd(ys + 2 * i);
        acc = _mm256_add_pd(acc, cmul_lanes(a, b));
    }
    Complex r = reduce_pairs(acc);
    for (; i < len; ++i) r += std::conj(x[i]) * y[i];
    return r;
}

}  // namespace

const Backend avx2_backend{"avx2", axpy_avx2, scale_avx2, dot_u_avx2, dot_c_avx2};

}  // namespace cmbethe::kernels

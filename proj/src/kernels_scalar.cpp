#include "cmbethe/kernels.hpp"

namespace cmbethe::kernels {

namespace {

void axpy_scalar(std::size_t len, Complex alpha, const Complex* x, Complex* y) {
    for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void scale_scalar(std::size_t len, Complex alpha, Complex* x) {
    for (std::size_t i = 0; i < len; ++i) x[i] *= alpha;
}

Complex dot_u_scalar(std::size_t len, const Complex* x, const Complex* y) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < len; ++i) acc += x[i] * y[i];
    return acc;
}

Complex dot_c_scalar(std::size_t len, const Complex* x, const Complex* y) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < len; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

}  // namespace

const Backend scalar_backend{"scalar", axpy_scalar, scale_scalar, dot_u_scalar, dot_c_scalar};

}  // namespace cmbethe::kernels

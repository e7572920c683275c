#include "cmbethe/complex_matrix.hpp"

#include <cmath>

#include "cmbethe/kernels.hpp"

namespace cmbethe {

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(check_dim(static_cast<int>(rows.size()))) {
    a_.reserve(static_cast<std::size_t>(n_) * n_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n_)
            throw std::invalid_argument("matrix initializer is not square");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
}

Matrix Matrix::diagonal(const std::vector<Complex>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

void Matrix::require_same_dim(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("matrix dimension mismatch");
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    kernels::active().scale(a_.size(), s, a_.data());
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    a.require_same_dim(b);
    Matrix c(a.n_);
    kernels::matmul(a.n_, a.data(), b.data(), c.data());
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Complex Matrix::trace() const {
    Complex s{0.0, 0.0};
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
}

Matrix& Matrix::shift_diagonal(Complex s) {
    for (int i = 0; i < n_; ++i) (*this)(i, i) += s;
    return *this;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const Complex& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

bool Matrix::is_finite() const {
    for (const Complex& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

}  // namespace cmbethe

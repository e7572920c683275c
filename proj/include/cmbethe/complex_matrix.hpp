#pragma once
// Dense square complex matrix, row-major, value semantics. Sized for desk-scale
// work (n <= 64); every algorithm in this library is O(n^3)-O(n^4) on top of it.

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace cmbethe {

using Complex = std::complex<double>;

class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int n, Complex fill = Complex{0.0, 0.0})
        : n_(check_dim(n)), a_(static_cast<std::size_t>(n) * n, fill) {}

    // Row-major initializer, e.g. Matrix{{a,b},{c,d}}.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<Complex>& d);

    int dim() const { return n_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Complex& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    Complex* data() { return a_.data(); }
    const Complex* data() const { return a_.data(); }
    Complex* row(int i) { return a_.data() + static_cast<std::size_t>(i) * n_; }
    const Complex* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * n_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(Complex s);
    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Complex s, Matrix m) { return m *= s; }
    friend Matrix operator*(Matrix m, Complex s) { return m *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);  // kernel matmul

    Matrix transpose() const;
    Complex trace() const;

    // Adds s to every diagonal entry.
    Matrix& shift_diagonal(Complex s);

    double max_abs() const;
    double frobenius_norm() const;
    bool is_finite() const;

  private:
    static int check_dim(int n) {
        if (n <= 0) throw std::invalid_argument("matrix dimension must be positive");
        return n;
    }
    void require_same_dim(const Matrix& rhs) const;

    int n_ = 0;
    std::vector<Complex> a_;
};

}  // namespace cmbethe

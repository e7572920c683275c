#pragma once
// Dense complex linear algebra on top of the kernel layer: pivoted LU,
// adjugate via the trace-based characteristic-polynomial recursion, one-sided
// Jacobi SVD, eigenvalues by balanced Hessenberg + shifted QR, polynomial
// roots through the companion matrix, and an O(n^3) optimal assignment solver.

#include <vector>

#include "cmbethe/complex_matrix.hpp"

namespace cmbethe {

// ---- LU (partial pivoting) -------------------------------------------------

class Lu {
  public:
    explicit Lu(const Matrix& a);

    bool singular() const { return singular_; }
    Complex determinant() const;

    // Solve A x = b. Throws on singular A.
    std::vector<Complex> solve(const std::vector<Complex>& b) const;
    // Solve A X = B columnwise. Throws on singular A.
    Matrix solve(const Matrix& b) const;
    Matrix inverse() const;

  private:
    Matrix lu_;
    std::vector<int> piv_;
    int sign_ = 1;
    bool singular_ = false;
};

inline Complex determinant(const Matrix& a) { return Lu(a).determinant(); }

// ---- Adjugate --------------------------------------------------------------

// Classical adjugate M~ with M * M~ = M~ * M = det(M) * I, computed by the
// Faddeev-LeVerrier recursion so it stays valid for singular M. For n = 1
// returns [1]. Input is rescaled to unit magnitude to tame the trace
// cancellations; adj(cM) = c^(n-1) adj(M) restores the result.
Matrix adjugate(const Matrix& m);

// ---- SVD (one-sided Jacobi) --------------------------------------------------

struct Svd {
    std::vector<double> sigma;  // descending
    Matrix u;                   // columns are left singular vectors
    Matrix v;                   // columns are right singular vectors; A = U diag(sigma) V^H
};

Svd svd(const Matrix& a);
std::vector<double> singular_values(const Matrix& a);

// sigma_min <= tol * sigma_max, the scale-free numerical singularity test.
bool numerically_singular(const Matrix& a, double tol);

// ---- Eigenvalues -------------------------------------------------------------

// Eigenvalues of a general complex matrix (balance, Householder Hessenberg,
// Wilkinson-shifted QR). Order is unspecified; use sort_complex for a
// canonical order. Throws if the QR iteration fails to converge.
std::vector<Complex> eigenvalues(const Matrix& a);

// Roots of c[0] + c[1] x + ... + c[deg] x^deg via the balanced companion
// matrix. Trailing (highest-degree) zero coefficients are stripped; throws if
// the polynomial is constant.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

// Canonical (re, im) lexicographic sort, used wherever a deterministic
// ordering of spectra or root multisets is needed.
void sort_complex(std::vector<Complex>& v);

// ---- Assignment ---------------------------------------------------------------

// Minimum-cost perfect assignment on a square cost matrix; returns perm with
// row i matched to column perm[i]. Deterministic for a fixed input.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace cmbethe

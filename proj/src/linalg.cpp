#include "cmbethe/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cmbethe/kernels.hpp"

namespace cmbethe {

namespace {

// |re| + |im|, the cheap magnitude used by balancing and deflation tests.
double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

}  // namespace

// ---- LU ---------------------------------------------------------------------

Lu::Lu(const Matrix& a) : lu_(a), piv_(static_cast<std::size_t>(a.dim())) {
    const int n = lu_.dim();
    const auto& kern = kernels::active();
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv_[static_cast<std::size_t>(k)] = p;
        if (best == 0.0) {
            singular_ = true;
            continue;
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
            sign_ = -sign_;
        }
        const Complex pivot = lu_(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Complex m = lu_(i, k) / pivot;
            lu_(i, k) = m;
            if (k + 1 < n)
                kern.axpy(static_cast<std::size_t>(n - k - 1), -m, lu_.row(k) + k + 1,
                          lu_.row(i) + k + 1);
        }
    }
}

Complex Lu::determinant() const {
    if (singular_) return Complex{0.0, 0.0};
    Complex d{static_cast<double>(sign_), 0.0};
    for (int i = 0; i < lu_.dim(); ++i) d *= lu_(i, i);
    return d;
}

std::vector<Complex> Lu::solve(const std::vector<Complex>& b) const {
    const int n = lu_.dim();
    if (singular_) throw std::domain_error("Lu::solve: matrix is singular");
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("Lu::solve: size mismatch");
    std::vector<Complex> x = b;
    for (int k = 0; k < n; ++k) {
        int p = piv_[static_cast<std::size_t>(k)];
        if (p != k) std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(p)]);
        for (int i = k + 1; i < n; ++i)
            x[static_cast<std::size_t>(i)] -= lu_(i, k) * x[static_cast<std::size_t>(k)];
    }
    for (int i = n - 1; i >= 0; --i) {
        Complex s = x[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / lu_(i, i);
    }
    return x;
}

Matrix Lu::solve(const Matrix& b) const {
    const int n = lu_.dim();
    if (b.dim() != n) throw std::invalid_argument("Lu::solve: size mismatch");
    Matrix x(n);
    std::vector<Complex> col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = b(i, j);
        std::vector<Complex> sol = solve(col);
        for (int i = 0; i < n; ++i) x(i, j) = sol[static_cast<std::size_t>(i)];
    }
    return x;
}

Matrix Lu::inverse() const { return solve(Matrix::identity(lu_.dim())); }

// ---- Adjugate -----------------------------------------------------------------

Matrix adjugate(const Matrix& m) {
    const int n = m.dim();
    if (n == 1) return Matrix{{Complex{1.0, 0.0}}};
    const double s = m.max_abs();
    if (s == 0.0) return Matrix(n);  // adjugate of the zero matrix, n >= 2
    Matrix ms = m;
    ms *= Complex{1.0 / s, 0.0};

    // B_0 = I; A_k = M B_{k-1}; c_k = -tr(A_k)/k; B_k = A_k + c_k I.
    // adj(M) = (-1)^(n-1) B_{n-1}.
    Matrix b = Matrix::identity(n);
    for (int k = 1; k <= n - 1; ++k) {
        Matrix a = ms * b;
        const Complex c = -a.trace() / static_cast<double>(k);
        b = std::move(a);
        b.shift_diagonal(c);
    }
    Complex factor{std::pow(s, n - 1), 0.0};
    if ((n - 1) % 2 != 0) factor = -factor;
    b *= factor;
    return b;
}

// ---- SVD ------------------------------------------------------------------------

Svd svd(const Matrix& a) {
    const int n = a.dim();
    const auto& kern = kernels::active();

    // Work on transposes so columns become contiguous rows for the kernels.
    Matrix w = a.transpose();   // rows of w are columns of A*V
    Matrix vt = Matrix::identity(n);

    const double eps = 1e-14;
    const int max_sweeps = 60;
    std::vector<Complex> tmp(static_cast<std::size_t>(n));
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const std::size_t len = static_cast<std::size_t>(n);
                const double app = kern.dot_c(len, w.row(p), w.row(p)).real();
                const double aqq = kern.dot_c(len, w.row(q), w.row(q)).real();
                const Complex apq = kern.dot_c(len, w.row(p), w.row(q));
                const double mag = std::abs(apq);
                if (mag <= eps * std::sqrt(app * aqq) || mag == 0.0) continue;
                rotated = true;

                const Complex phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex sgiv = (t * c) * phase;

                // col_p' = c col_p - conj(s) col_q ; col_q' = s col_p + c col_q
                auto rotate_rows = [&](Matrix& mat) {
                    std::copy(mat.row(p), mat.row(p) + n, tmp.begin());
                    kern.scale(len, Complex{c, 0.0}, mat.row(p));
                    kern.axpy(len, -std::conj(sgiv), mat.row(q), mat.row(p));
                    kern.scale(len, Complex{c, 0.0}, mat.row(q));
                    kern.axpy(len, sgiv, tmp.data(), mat.row(q));
                };
                rotate_rows(w);
                rotate_rows(vt);
            }
        }
        if (!rotated) break;
    }

    Svd out;
    out.sigma.resize(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        out.sigma[static_cast<std::size_t>(j)] =
            std::sqrt(kern.dot_c(static_cast<std::size_t>(n), w.row(j), w.row(j)).real());
        order[static_cast<std::size_t>(j)] = j;
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return out.sigma[static_cast<std::size_t>(x)] > out.sigma[static_cast<std::size_t>(y)];
    });

    Svd sorted;
    sorted.sigma.resize(static_cast<std::size_t>(n));
    sorted.u = Matrix(n);
    sorted.v = Matrix(n);
    for (int jj = 0; jj < n; ++jj) {
        const int j = order[static_cast<std::size_t>(jj)];
        const double sig = out.sigma[static_cast<std::size_t>(j)];
        sorted.sigma[static_cast<std::size_t>(jj)] = sig;
        for (int i = 0; i < n; ++i) {
            // u column jj = (A v_j)/sigma; w row j holds A v_j.
            sorted.u(i, jj) = sig > 0.0 ? w(j, i) / sig
                                        : (i == jj ? Complex{1.0, 0.0} : Complex{0.0, 0.0});
            sorted.v(i, jj) = vt(j, i);
        }
    }
    return sorted;
}

std::vector<double> singular_values(const Matrix& a) { return svd(a).sigma; }

bool numerically_singular(const Matrix& a, double tol) {
    std::vector<double> sig = singular_values(a);
    return sig.back() <= tol * std::max(sig.front(), DBL_MIN);
}

// ---- Eigenvalues -------------------------------------------------------------------

namespace {

// Parlett-Reinsch balancing: diagonal similarity with powers of two so that
// row and column norms roughly match. Improves shifted-QR accuracy markedly,
// companion matrices especially.
void balance(Matrix& h) {
    const int n = h.dim();
    const double radix = 2.0, radix2 = 4.0;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r += abs1(h(i, j));
                c += abs1(h(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) h(i, j) *= ginv;
                for (int j = 0; j < n; ++j) h(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (similarity).
void hessenberg(Matrix& h) {
    const int n = h.dim();
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (int k = 0; k + 2 < n; ++k) {
        const int len = n - k - 1;
        double xnorm2 = 0.0;
        for (int i = 0; i < len; ++i) xnorm2 += std::norm(h(k + 1 + i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;

        const Complex x0 = h(k + 1, k);
        const Complex sign = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
        const Complex alpha = -sign * xnorm;

        for (int i = 0; i < len; ++i) v[static_cast<std::size_t>(i)] = h(k + 1 + i, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (int i = 0; i < len; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        // Left: H <- (I - beta v v^H) H on rows k+1.., columns k..
        for (int j = k; j < n; ++j) {
            Complex s{0.0, 0.0};
            for (int i = 0; i < len; ++i)
                s += std::conj(v[static_cast<std::size_t>(i)]) * h(k + 1 + i, j);
            s *= beta;
            for (int i = 0; i < len; ++i) h(k + 1 + i, j) -= s * v[static_cast<std::size_t>(i)];
        }
        // Right: H <- H (I - beta v v^H) on columns k+1.., all rows.
        for (int i = 0; i < n; ++i) {
            Complex s{0.0, 0.0};
            for (int j = 0; j < len; ++j) s += h(i, k + 1 + j) * v[static_cast<std::size_t>(j)];
            s *= beta;
            for (int j = 0; j < len; ++j)
                h(i, k + 1 + j) -= s * std::conj(v[static_cast<std::size_t>(j)]);
        }

        h(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) h(i, k) = Complex{0.0, 0.0};
    }
}

struct Givens {
    double c;
    Complex s;
};

// Rotation G = [[c, s], [-conj(s), c]] with G * (a, b)^T = (r, 0)^T.
Givens make_givens(Complex a, Complex b) {
    const double aa = std::abs(a), bb = std::abs(b);
    if (bb == 0.0) return {1.0, Complex{0.0, 0.0}};
    if (aa == 0.0) return {0.0, std::conj(b) / bb};
    const double r = std::hypot(aa, bb);
    return {aa / r, (a / aa) * std::conj(b) / static_cast<double>(r)};
}

std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
    const Complex mean = 0.5 * (a + d);
    const Complex disc = std::sqrt(mean * mean - (a * d - b * c));
    Complex e1 = mean + disc, e2 = mean - disc;
    if (std::abs(e1) < std::abs(e2)) std::swap(e1, e2);
    const Complex det = a * d - b * c;
    if (std::abs(e1) > 0.0) e2 = det / e1;  // recompute the small one without cancellation
    return {e1, e2};
}

std::vector<Complex> hessenberg_qr_eigenvalues(Matrix& h) {
    const int n = h.dim();
    std::vector<Complex> eig(static_cast<std::size_t>(n));
    const double hnorm = std::max(h.frobenius_norm(), DBL_MIN);
    const double ulp = DBL_EPSILON;

    int hi = n - 1;
    int iters_at_hi = 0;
    long total = 0;
    const long total_cap = 100L * n + 200;
    std::vector<Givens> rots(static_cast<std::size_t>(n));

    while (hi >= 0) {
        if (++total > total_cap)
            throw std::runtime_error("eigenvalues: QR iteration failed to converge");

        // Deflate negligible subdiagonals.
        for (int k = hi; k >= 1; --k) {
            double tol = ulp * (abs1(h(k - 1, k - 1)) + abs1(h(k, k)));
            if (tol == 0.0) tol = ulp * hnorm;
            if (abs1(h(k, k - 1)) <= tol) h(k, k - 1) = Complex{0.0, 0.0};
        }

        if (hi == 0 || h(hi, hi - 1) == Complex{0.0, 0.0}) {
            eig[static_cast<std::size_t>(hi)] = h(hi, hi);
            --hi;
            iters_at_hi = 0;
            continue;
        }

        int lo = hi;
        while (lo > 0 && h(lo, lo - 1) != Complex{0.0, 0.0}) --lo;

        if (hi - lo == 1) {
            auto [e1, e2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            eig[static_cast<std::size_t>(hi)] = e1;
            eig[static_cast<std::size_t>(lo)] = e2;
            hi -= 2;
            iters_at_hi = 0;
            continue;
        }

        // Shift: Wilkinson from the trailing 2x2, with an occasional
        // exceptional kick to break symmetry stalls.
        Complex sigma;
        ++iters_at_hi;
        if (iters_at_hi % 12 == 0) {
            double kick = std::abs(h(hi, hi - 1));
            if (hi - 2 >= lo) kick += std::abs(h(hi - 1, hi - 2));
            sigma = h(hi, hi) + 0.75 * kick;
        } else {
            auto [e1, e2] =
                eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            sigma = (std::abs(e1 - h(hi, hi)) < std::abs(e2 - h(hi, hi))) ? e1 : e2;
        }

        for (int i = lo; i <= hi; ++i) h(i, i) -= sigma;

        // QR sweep: left rotations make R, right rotations form R Q.
        for (int i = lo; i < hi; ++i) {
            Givens g = make_givens(h(i, i), h(i + 1, i));
            rots[static_cast<std::size_t>(i)] = g;
            for (int j = i; j <= hi; ++j) {
                const Complex t0 = h(i, j), t1 = h(i + 1, j);
                h(i, j) = g.c * t0 + g.s * t1;
                h(i + 1, j) = -std::conj(g.s) * t0 + g.c * t1;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const Givens& g = rots[static_cast<std::size_t>(i)];
            const int top = lo;
            for (int r = top; r <= std::min(i + 1, hi); ++r) {
                const Complex t0 = h(r, i), t1 = h(r, i + 1);
                h(r, i) = g.c * t0 + std::conj(g.s) * t1;
                h(r, i + 1) = -g.s * t0 + g.c * t1;
            }
        }

        for (int i = lo; i <= hi; ++i) h(i, i) += sigma;
    }
    return eig;
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& a) {
    const int n = a.dim();
    if (!a.is_finite()) throw std::invalid_argument("eigenvalues: non-finite input");
    if (n == 1) return {a(0, 0)};
    Matrix h = a;
    balance(h);
    hessenberg(h);
    return hessenberg_qr_eigenvalues(h);
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == Complex{0.0, 0.0}) --deg;
    if (deg <= 1) throw std::invalid_argument("polynomial_roots: polynomial is constant");
    const int d = static_cast<int>(deg) - 1;
    const Complex lead = coeffs[static_cast<std::size_t>(d)];
    Matrix comp(d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = Complex{1.0, 0.0};
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
    return eigenvalues(comp);
}

void sort_complex(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

// ---- Assignment -----------------------------------------------------------------

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("min_cost_assignment: cost matrix not square");
    const double inf = std::numeric_limits<double>::infinity();

    // Potentials + shortest augmenting paths, 1-indexed with column 0 as slack.
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                                   u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> perm(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        perm[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return perm;
}

}  // namespace cmbethe

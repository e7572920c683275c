#include "cmbethe/phase_space.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmbethe/kernels.hpp"
#include "cmbethe/linalg.hpp"

namespace cmbethe {

namespace {

std::vector<Complex> mat_vec(const Matrix& a, const std::vector<Complex>& v) {
    const int n = a.dim();
    std::vector<Complex> out(static_cast<std::size_t>(n));
    const auto& kern = kernels::active();
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = kern.dot_u(static_cast<std::size_t>(n), a.row(i), v.data());
    return out;
}

Complex bilinear(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    return kernels::active().dot_u(a.size(), a.data(), b.data());
}

void require_finite_square(const Matrix& x, const Matrix& z) {
    if (x.dim() != z.dim()) throw CmError("pair validation: X and Z dimensions differ");
    if (!x.is_finite() || !z.is_finite())
        throw CmError("pair validation: non-finite matrix entries");
}

PairValidation validate_oriented(const Matrix& x, const Matrix& z,
                                 PairOrientation orientation, double tol) {
    require_finite_square(x, z);
    Matrix r = (orientation == PairOrientation::direct) ? x * z - z * x : z * x - x * z;
    r.shift_diagonal(Complex{1.0, 0.0});

    PairValidation result;
    result.singular_values = singular_values(r);
    const double s1 = result.singular_values.front();
    const double s2 = r.dim() > 1 ? result.singular_values[1] : 0.0;
    result.defect = s2 / std::max(s1, 1.0);

    if (s1 <= tol) {
        result.rejection = PairRejection::rank_zero;
        result.message = "commutator plus identity is numerically zero (rank 0, need rank 1)";
        return result;
    }
    if (s2 > tol * std::max(s1, 1.0)) {
        result.rejection = PairRejection::rank_excess;
        std::ostringstream os;
        os << "rank([X,Z]+I) exceeds 1: sigma_1 = " << s1 << ", sigma_2 = " << s2;
        result.message = os.str();
        return result;
    }
    result.pair = CmPair{x, z, result.defect, orientation};
    return result;
}

}  // namespace

Matrix CmPair::commutator_plus_identity() const {
    Matrix r = (orientation == PairOrientation::direct) ? x * z - z * x : z * x - x * z;
    r.shift_diagonal(Complex{1.0, 0.0});
    return r;
}

PairValidation validate_pair(const Matrix& x, const Matrix& z, double tol) {
    return validate_oriented(x, z, PairOrientation::direct, tol);
}

PairValidation validate_pair(const Matrix& x, const Matrix& z, const Tolerances& tol) {
    return validate_pair(x, z, tol.rank_one);
}

Matrix RankOneWitness::outer_product() const {
    const int n = static_cast<int>(left.size());
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = left[static_cast<std::size_t>(i)] * right[static_cast<std::size_t>(j)];
    return m;
}

RankOneWitness extract_rank_one_witness(const Matrix& r, double tol) {
    const int n = r.dim();
    Svd decomposition = svd(r);
    const double s1 = decomposition.sigma.front();
    const double s2 = n > 1 ? decomposition.sigma[1] : 0.0;
    if (s1 <= DBL_MIN) {
        std::ostringstream os;
        os << "rank-one extraction: matrix is numerically zero (sigma_1 = " << s1 << ")";
        throw CmError(os.str());
    }
    if (s2 > tol * s1) {
        std::ostringstream os;
        os << "rank-one extraction: rank >= 2 (sigma_1 = " << s1 << ", sigma_2 = " << s2 << ")";
        throw CmError(os.str());
    }

    RankOneWitness w;
    w.left.resize(static_cast<std::size_t>(n));
    w.right.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        w.left[static_cast<std::size_t>(i)] = s1 * decomposition.u(i, 0);
        w.right[static_cast<std::size_t>(i)] = std::conj(decomposition.v(i, 0));
    }

    // Gauge: rotate so the largest-magnitude entry of `right` is real positive.
    int k = 0;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = std::abs(w.right[static_cast<std::size_t>(i)]);
        if (m > best) {
            best = m;
            k = i;
        }
    }
    const Complex pivot = w.right[static_cast<std::size_t>(k)];
    const Complex phase = pivot / std::abs(pivot);
    for (auto& v : w.right) v *= std::conj(phase);
    for (auto& v : w.left) v *= phase;
    w.right[static_cast<std::size_t>(k)] = Complex{best, 0.0};  // exact after the rotation
    return w;
}

RankOneWitness adjugate_witness(const Matrix& x, const Tolerances& tol) {
    const int n = x.dim();
    if (!x.is_finite()) throw CmError("adjugate witness: non-finite input");
    std::vector<double> sig = singular_values(x);
    const double s1 = std::max(sig.front(), DBL_MIN);
    if (sig.back() > tol.singular * s1) {
        std::ostringstream os;
        os << "adjugate witness: X is not numerically singular (sigma_min/sigma_max = "
           << sig.back() / s1 << ")";
        throw CmError(os.str());
    }
    if (n >= 2 && sig[static_cast<std::size_t>(n - 2)] <= tol.singular * s1) {
        std::ostringstream os;
        os << "vanishing adjugate: rank X <= n-2 (sigma_{n-1}/sigma_1 = "
           << sig[static_cast<std::size_t>(n - 2)] / s1 << "), Lemma identities degenerate";
        throw CmError(os.str());
    }
    return extract_rank_one_witness(adjugate(x), tol.rank_one);
}

ScalarData scalar_data(const CmPair& pair, const Tolerances& tol) {
    if (pair.orientation != PairOrientation::direct)
        throw CmError("scalar data requires a direct-orientation pair");
    ScalarData d;
    d.commutator = extract_rank_one_witness(pair.commutator_plus_identity(), tol.rank_one);
    d.adjugate = adjugate_witness(pair.x, tol);
    d.gamma = bilinear(d.adjugate.right, d.commutator.left);  // w^T e
    d.mu = bilinear(d.commutator.right, d.adjugate.left);     // f^T v
    return d;
}

PqValues evaluate_pq(const CmPair& pair, const ScalarData& data, Complex lambda) {
    Matrix shifted = pair.z * Complex{-1.0, 0.0};
    shifted.shift_diagonal(lambda);
    const Matrix adj = adjugate(shifted);
    PqValues out;
    out.p = bilinear(data.commutator.right, mat_vec(adj, data.adjugate.left));  // f^T adj v
    out.q = bilinear(data.adjugate.right, mat_vec(adj, data.commutator.left));  // w^T adj e
    return out;
}

PqResult evaluate_pq(const CmPair& pair, Complex lambda, const Tolerances& tol) {
    PqResult r;
    r.scalars = scalar_data(pair, tol);
    PqValues v = evaluate_pq(pair, r.scalars, lambda);
    r.p = v.p;
    r.q = v.q;
    return r;
}

CmPair cm_pair_from_positions(const std::vector<Complex>& positions,
                              const std::vector<Complex>& momenta,
                              const Tolerances& tol) {
    const int n = static_cast<int>(positions.size());
    if (n == 0) throw CmError("cm_pair_from_positions: empty position list");
    if (momenta.size() != positions.size())
        throw CmError("cm_pair_from_positions: positions/momenta size mismatch");

    double scale = 1.0;
    for (const Complex& p : positions) scale = std::max(scale, std::abs(p));
    const double sep_tol = 1e-12 * scale;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            if (std::abs(positions[static_cast<std::size_t>(j)] -
                         positions[static_cast<std::size_t>(k)]) <= sep_tol) {
                std::ostringstream os;
                os << "cm_pair_from_positions: positions " << j << " and " << k
                   << " coincide";
                throw CmError(os.str());
            }

    Matrix x = Matrix::diagonal(positions);
    Matrix z(n);
    for (int j = 0; j < n; ++j) {
        z(j, j) = momenta[static_cast<std::size_t>(j)];
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            z(j, k) = Complex{1.0, 0.0} / (positions[static_cast<std::size_t>(j)] -
                                           positions[static_cast<std::size_t>(k)]);
        }
    }
    PairValidation v = validate_pair(x, z, tol);
    if (!v.accepted())
        throw CmError("cm_pair_from_positions: constructed pair failed validation: " +
                      v.message);
    return *v.pair;
}

CmPair paper_2x2_pair() {
    const Matrix x{{Complex{0.0, 0.0}, Complex{1.0, 0.0}},
                   {Complex{0.0, 0.0}, Complex{0.0, 0.0}}};
    const Matrix z{{Complex{0.0, 0.0}, Complex{0.0, 0.0}},
                   {Complex{1.0, 0.0}, Complex{0.0, 0.0}}};
    return *validate_pair(x, z, Tolerances{}).pair;
}

double spectral_distance(Complex lambda, const Matrix& m) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex ev : eigenvalues(m)) best = std::min(best, std::abs(lambda - ev));
    return best;
}

Matrix RationalFunction::evaluate(const Matrix& m, double spectral_tol) const {
    const int n = m.dim();
    Matrix out(n);
    if (!poly.empty()) {
        // Horner: out = c_d M^d + ... + c_0 I
        for (std::size_t k = poly.size(); k-- > 0;) {
            out = out * m;
            out.shift_diagonal(poly[k]);
        }
    }
    if (!poles.empty()) {
        double spectral_scale = 1.0;
        std::vector<Complex> spectrum = eigenvalues(m);
        for (Complex ev : spectrum) spectral_scale = std::max(spectral_scale, std::abs(ev));
        for (const PoleTerm& term : poles) {
            double dist = std::numeric_limits<double>::infinity();
            for (Complex ev : spectrum) dist = std::min(dist, std::abs(term.pole - ev));
            if (dist <= spectral_tol * spectral_scale) {
                std::ostringstream os;
                os << "rational function pole at (" << term.pole.real() << ", "
                   << term.pole.imag() << ") collides with the spectrum (distance " << dist
                   << ")";
                throw CmError(os.str());
            }
            Matrix shifted = m * Complex{-1.0, 0.0};
            shifted.shift_diagonal(term.pole);
            out += Lu(shifted).inverse() * term.residue;
        }
    }
    return out;
}

CmPair apply_symmetry(const CmPair& pair, const SymmetryOp& op, const Tolerances& tol) {
    Matrix x = pair.x;
    Matrix z = pair.z;
    bool is_transpose = false;

    if (const auto* tx = std::get_if<TranslateX>(&op)) {
        x += tx->f.evaluate(z, tol.spectral);
    } else if (const auto* tz = std::get_if<TranslateZ>(&op)) {
        z += tz->f.evaluate(x, tol.spectral);
    } else if (std::get_if<Transpose>(&op)) {
        x = pair.x.transpose();
        z = pair.z.transpose();
        is_transpose = true;
    } else {
        const auto& conj = std::get<Conjugate>(op);
        if (conj.g.dim() != pair.dim())
            throw CmError("apply_symmetry: conjugating matrix has wrong dimension");
        Lu lu(conj.g);
        if (lu.singular()) throw CmError("apply_symmetry: conjugating matrix is singular");
        const Matrix ginv = lu.inverse();
        x = conj.g * pair.x * ginv;
        z = conj.g * pair.z * ginv;
    }

    PairValidation v = validate_oriented(x, z, pair.orientation, tol.rank_one);
    if (v.accepted()) return *v.pair;

    if (is_transpose) {
        // The transpose reverses the commutator orientation whenever n >= 3:
        // [X^T, Z^T] + I = (2I - e f^T)^T, which is invertible for n >= 3.
        const PairOrientation flipped = pair.orientation == PairOrientation::direct
                                            ? PairOrientation::reversed
                                            : PairOrientation::direct;
        PairValidation vr = validate_oriented(x, z, flipped, tol.rank_one);
        if (vr.accepted()) return *vr.pair;
    }
    throw CmError("apply_symmetry: transformed pair failed re-validation (" + v.message +
                  ")");
}

}  // namespace cmbethe

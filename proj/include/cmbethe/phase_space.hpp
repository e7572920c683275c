#pragma once
// The completed Calogero-Moser phase space layer: pairs (X, Z) with
// [X, Z] + I of rank one, rank-one witnesses, the scalar data (p, q, gamma,
// mu) attached to det X = 0 pairs, and the symmetry actions.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cmbethe/complex_matrix.hpp"

namespace cmbethe {

struct Tolerances {
    double rank_one = 1e-10;    // sigma_2 <= rank_one * max(sigma_1, 1) accepts a pair
    double singular = 1e-9;     // sigma_min <= singular * sigma_max marks det ~ 0
    double spectral = 1e-8;     // min distance of a pole to spec(Z), times max(1, rho(Z))
    double root_verify = 1e-7;  // |tau(root)| <= root_verify * max|tau| on the circle
    double degeneracy_floor = 1e-12;
    double residual_floor = 1e-12;
};

class CmError : public std::runtime_error {
  public:
    explicit CmError(const std::string& what) : std::runtime_error(what) {}
};

// Eq.(1) can hold with the commutator taken in either order; the plain
// transpose map lands in the reversed orientation for n >= 3. Determinant
// level operations (tau, flows) are orientation-blind, the Lemma identities
// are not.
enum class PairOrientation { direct, reversed };

struct CmPair {
    Matrix x;
    Matrix z;
    double defect = 0.0;  // sigma_2 / max(sigma_1, 1) of the validated commutator
    PairOrientation orientation = PairOrientation::direct;

    int dim() const { return x.dim(); }
    // [X, Z] + I for the direct orientation, [Z, X] + I for reversed.
    Matrix commutator_plus_identity() const;
};

enum class PairRejection { none, rank_zero, rank_excess };

struct PairValidation {
    std::optional<CmPair> pair;  // engaged iff accepted
    PairRejection rejection = PairRejection::none;
    std::vector<double> singular_values;  // of [X,Z] + I, descending
    double defect = 0.0;
    std::string message;

    bool accepted() const { return pair.has_value(); }
};

// Checks rank([X,Z] + I) = 1: accepts iff sigma_2 <= tol * max(sigma_1, 1),
// with a distinct rank-zero rejection when sigma_1 itself vanishes.
PairValidation validate_pair(const Matrix& x, const Matrix& z, double tol);
PairValidation validate_pair(const Matrix& x, const Matrix& z,
                             const Tolerances& tol = Tolerances{});

struct RankOneWitness {
    std::vector<Complex> left;
    std::vector<Complex> right;

    Matrix outer_product() const;
};

// Factors a numerically rank-one R as left * right^T from the dominant
// singular triple; gauge: left = sigma_1 u_1, right = conj(v_1), then rotated
// so the largest-magnitude entry of right is real positive.
RankOneWitness extract_rank_one_witness(const Matrix& r, double tol);

// Witness (v, w) with adjugate(X) = v w^T, for numerically singular X.
// Throws CmError("vanishing adjugate...") when rank X <= n-2, and a
// precondition error when X is not singular.
RankOneWitness adjugate_witness(const Matrix& x, const Tolerances& tol = Tolerances{});

struct ScalarData {
    Complex gamma;               // w^T e
    Complex mu;                  // f^T v
    RankOneWitness commutator;   // (e, f): e f^T = [X,Z] + I
    RankOneWitness adjugate;     // (v, w): v w^T = adj(X)
};

ScalarData scalar_data(const CmPair& pair, const Tolerances& tol = Tolerances{});

struct PqValues {
    Complex p;  // f^T adj(lambda I - Z) v
    Complex q;  // w^T adj(lambda I - Z) e
};

// p, q for explicit witnesses; gamma*p and mu*q are gauge invariant.
PqValues evaluate_pq(const CmPair& pair, const ScalarData& data, Complex lambda);

struct PqResult {
    Complex p;
    Complex q;
    ScalarData scalars;
};
PqResult evaluate_pq(const CmPair& pair, Complex lambda,
                     const Tolerances& tol = Tolerances{});

// X = diag(x), Z = diag(p) + Cauchy off-diagonal 1/(x_j - x_k); the commutator
// plus identity is exactly the all-ones matrix.
CmPair cm_pair_from_positions(const std::vector<Complex>& positions,
                              const std::vector<Complex>& momenta,
                              const Tolerances& tol = Tolerances{});

// The simplest 2x2 member: X = [[0,1],[0,0]], Z = [[0,0],[1,0]].
CmPair paper_2x2_pair();

// Rational function of one matrix variable: polynomial part (ascending
// coefficients) plus simple-pole terms sum_k residue_k (pole_k I - M)^(-1).
struct RationalFunction {
    std::vector<Complex> poly;
    struct PoleTerm {
        Complex pole;
        Complex residue;
    };
    std::vector<PoleTerm> poles;

    Matrix evaluate(const Matrix& m, double spectral_tol) const;
};

struct TranslateX {
    RationalFunction f;
};
struct TranslateZ {
    RationalFunction f;
};
struct Transpose {};
struct Conjugate {
    Matrix g;
};
using SymmetryOp = std::variant<TranslateX, TranslateZ, Transpose, Conjugate>;

// Applies the symmetry and re-validates. Translations and conjugation
// preserve Eq.(1) exactly; the transpose keeps the direct orientation only
// for n <= 2 and otherwise returns a reversed-orientation pair.
CmPair apply_symmetry(const CmPair& pair, const SymmetryOp& op,
                      const Tolerances& tol = Tolerances{});

// Distance from lambda to the spectrum of m (for pole checks).
double spectral_distance(Complex lambda, const Matrix& m);

}  // namespace cmbethe

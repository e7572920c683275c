#pragma once
// Tau functions in Miwa variables: tau(l, lambda) = det(X + sum_i l_i
// (lambda_i I - Z)^(-1)), its two-variable lattice section tau^m(x), the
// polynomial coefficients in x, and the roots.

#include <array>
#include <vector>

#include "cmbethe/phase_space.hpp"

namespace cmbethe {

struct MiwaPoint {
    struct Term {
        Complex weight;  // l_i
        Complex pole;    // lambda_i
    };
    std::vector<Term> terms;
};

struct LatticeSection {
    Complex eta;      // nonzero lattice spacing
    Complex lambda1;  // pole carrying x = eta * l_{i1}
    Complex lambda2;  // pole carrying m = l_{i2}
};

// Throws unless eta != 0 and both poles stay clear of spec(Z).
// lambda1 == lambda2 is allowed here (flow evaluation); the factorization
// checks flag it degenerate themselves.
void validate_section(const LatticeSection& section, const Matrix& z,
                      const Tolerances& tol = Tolerances{});

// det(X + sum l_i (lambda_i I - Z)^(-1)); resolvents by linear solves.
// Zero-weight terms are skipped; active poles must avoid spec(Z).
Complex tau_miwa(const CmPair& pair, const MiwaPoint& point,
                 const Tolerances& tol = Tolerances{});

// tau^m(x) = tau with terms [(x/eta, lambda1), (m, lambda2)].
Complex tau_section(const CmPair& pair, const LatticeSection& section, Complex m,
                    Complex x, const Tolerances& tol = Tolerances{});

struct TauPolynomial {
    Complex m;
    std::vector<Complex> coefficients;  // ascending, size n+1

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    Complex evaluate(Complex x) const;
};

// Coefficients by evaluation at n+1 roots-of-unity nodes on a circle sized to
// the data (an inverse DFT, so the system is perfectly conditioned). The
// off-node residual and the leading coefficient eta^(-n)/det(lambda1 I - Z)
// are checked internally; failure raises a numerical-conditioning error.
TauPolynomial tau_polynomial(const CmPair& pair, const LatticeSection& section,
                             Complex m, const Tolerances& tol = Tolerances{});

// Radius of the interpolation/verification circle used by tau_polynomial.
double tau_circle_radius(const CmPair& pair, const LatticeSection& section);

// max |tau^m| over the interpolation nodes; scale reference for root checks.
double tau_scale_on_circle(const CmPair& pair, const LatticeSection& section, Complex m,
                           const Tolerances& tol = Tolerances{});

// The n roots of tau^m(x), computed as the eigenvalues of the flow matrix
// X(m) (the numerically robust route; the polynomial/companion path stays
// available as an independent oracle). Order is unspecified.
std::vector<Complex> tau_roots(const CmPair& pair, const LatticeSection& section,
                               Complex m, const Tolerances& tol = Tolerances{});

// The paper's closed-form eigenvalue display for the 2x2 example, evaluated
// verbatim (both sign branches). Requires lambda2 != 0.
std::array<Complex, 2> closed_form_2x2(Complex eta, Complex lambda1, Complex lambda2,
                                       Complex m);

// Side-by-side comparison of the closed-form display against the eigenvalue
// route on the 2x2 pair; max_mismatch is the optimal-assignment distance.
// The two disagree except on special parameter slices; see the report note.
struct ClosedFormComparison {
    std::array<Complex, 2> closed_form;
    std::array<Complex, 2> derived;
    double max_mismatch = 0.0;
    // |tau^m| at each candidate root, scaled by the circle max: the
    // brute-force arbiter of which formula actually hits the roots.
    std::array<double, 2> closed_form_tau_residual{};
    std::array<double, 2> derived_tau_residual{};
};

ClosedFormComparison compare_closed_form_2x2(const LatticeSection& section, Complex m,
                                             const Tolerances& tol = Tolerances{});

}  // namespace cmbethe

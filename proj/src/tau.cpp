#include "cmbethe/tau.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cmbethe/flow.hpp"
#include "cmbethe/linalg.hpp"

namespace cmbethe {

namespace {

void check_pole(Complex pole, const std::vector<Complex>& spectrum, double spectral_tol,
                const char* what) {
    double scale = 1.0, dist = std::numeric_limits<double>::infinity();
    for (Complex ev : spectrum) {
        scale = std::max(scale, std::abs(ev));
        dist = std::min(dist, std::abs(pole - ev));
    }
    if (dist <= spectral_tol * scale) {
        std::ostringstream os;
        os << what << " pole (" << pole.real() << ", " << pole.imag()
           << ") collides with spec(Z) (distance " << dist << ")";
        throw CmError(os.str());
    }
}

}  // namespace

void validate_section(const LatticeSection& section, const Matrix& z,
                      const Tolerances& tol) {
    if (std::abs(section.eta) == 0.0) throw CmError("lattice section: eta must be nonzero");
    const std::vector<Complex> spectrum = eigenvalues(z);
    check_pole(section.lambda1, spectrum, tol.spectral, "lambda1");
    check_pole(section.lambda2, spectrum, tol.spectral, "lambda2");
}

Complex tau_miwa(const CmPair& pair, const MiwaPoint& point, const Tolerances& tol) {
    const int n = pair.dim();
    std::vector<Complex> spectrum;
    Matrix s = pair.x;
    for (std::size_t t = 0; t < point.terms.size(); ++t) {
        const MiwaPoint::Term& term = point.terms[t];
        if (term.weight == Complex{0.0, 0.0}) continue;
        if (spectrum.empty()) spectrum = eigenvalues(pair.z);
        std::ostringstream label;
        label << "miwa term " << t;
        check_pole(term.pole, spectrum, tol.spectral, label.str().c_str());
        Matrix shifted = pair.z * Complex{-1.0, 0.0};
        shifted.shift_diagonal(term.pole);
        s += Lu(shifted).solve(Matrix::identity(n)) * term.weight;
    }
    return Lu(s).determinant();
}

Complex tau_section(const CmPair& pair, const LatticeSection& section, Complex m,
                    Complex x, const Tolerances& tol) {
    validate_section(section, pair.z, tol);
    MiwaPoint point;
    point.terms = {{x / section.eta, section.lambda1}, {m, section.lambda2}};
    return tau_miwa(pair, point, tol);
}

Complex TauPolynomial::evaluate(Complex x) const {
    Complex acc{0.0, 0.0};
    for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
    return acc;
}

double tau_circle_radius(const CmPair& pair, const LatticeSection& section) {
    const double scale = std::max({pair.x.max_abs(), pair.z.max_abs(), 1.0});
    return std::max(1.0, std::abs(section.eta) * scale);
}

TauPolynomial tau_polynomial(const CmPair& pair, const LatticeSection& section, Complex m,
                             const Tolerances& tol) {
    validate_section(section, pair.z, tol);
    const int n = pair.dim();
    const int nodes = n + 1;
    const double r = tau_circle_radius(pair, section);

    std::vector<Complex> values(static_cast<std::size_t>(nodes));
    double vmax = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const Complex xk = std::polar(r, 2.0 * std::numbers::pi * k / nodes);
        values[static_cast<std::size_t>(k)] = tau_section(pair, section, m, xk, tol);
        vmax = std::max(vmax, std::abs(values[static_cast<std::size_t>(k)]));
    }

    // tau^m has degree exactly n in x, so the inverse DFT on n+1 nodes is exact.
    TauPolynomial poly;
    poly.m = m;
    poly.coefficients.resize(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
        Complex acc{0.0, 0.0};
        for (int k = 0; k < nodes; ++k) {
            acc += values[static_cast<std::size_t>(k)] *
                   std::polar(1.0, -2.0 * std::numbers::pi * j * k / nodes);
        }
        poly.coefficients[static_cast<std::size_t>(j)] =
            acc / (static_cast<double>(nodes) * std::pow(r, j));
    }

    // Off-node interpolation residual.
    const Complex xtest = std::polar(r, std::numbers::pi / nodes);
    const Complex direct = tau_section(pair, section, m, xtest, tol);
    const double scale = std::max(vmax, tol.residual_floor);
    if (std::abs(poly.evaluate(xtest) - direct) > 1e-8 * scale)
        throw CmError("tau_polynomial: interpolation residual above tolerance "
                      "(ill-conditioned configuration)");

    // Leading coefficient must equal eta^(-n) / det(lambda1 I - Z).
    Matrix shifted = pair.z * Complex{-1.0, 0.0};
    shifted.shift_diagonal(section.lambda1);
    const Complex expected_lead =
        Complex{1.0, 0.0} / (std::pow(section.eta, n) * Lu(shifted).determinant());
    const Complex lead = poly.coefficients.back();
    if (std::abs(lead - expected_lead) > 1e-8 * std::abs(expected_lead))
        throw CmError("tau_polynomial: leading coefficient check failed "
                      "(ill-conditioned configuration)");
    return poly;
}

double tau_scale_on_circle(const CmPair& pair, const LatticeSection& section, Complex m,
                           const Tolerances& tol) {
    validate_section(section, pair.z, tol);
    const int nodes = pair.dim() + 1;
    const double r = tau_circle_radius(pair, section);
    double vmax = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const Complex xk = std::polar(r, 2.0 * std::numbers::pi * k / nodes);
        vmax = std::max(vmax, std::abs(tau_section(pair, section, m, xk, tol)));
    }
    return vmax;
}

std::vector<Complex> tau_roots(const CmPair& pair, const LatticeSection& section, Complex m,
                               const Tolerances& tol) {
    validate_section(section, pair.z, tol);
    return eigenvalues(flow_matrix(pair, section, m, tol));
}

std::array<Complex, 2> closed_form_2x2(Complex eta, Complex lambda1, Complex lambda2,
                                       Complex m) {
    if (lambda2 == Complex{0.0, 0.0})
        throw CmError("closed_form_2x2: lambda2 = 0 divides the expression");
    const Complex core = lambda1 * m + lambda2 * (Complex{-1.0, 0.0} + lambda1 + m);
    const Complex sigma = std::sqrt(
        eta * eta *
        (-4.0 * lambda1 * lambda2 * m * (Complex{-1.0, 0.0} + lambda2 + m) + core * core));
    const Complex denom = 2.0 * lambda2;
    return {(-eta * core + sigma) / denom, (-eta * core - sigma) / denom};
}

ClosedFormComparison compare_closed_form_2x2(const LatticeSection& section, Complex m,
                                             const Tolerances& tol) {
    const CmPair pair = paper_2x2_pair();
    ClosedFormComparison cmp;
    cmp.closed_form = closed_form_2x2(section.eta, section.lambda1, section.lambda2, m);
    const std::vector<Complex> derived = tau_roots(pair, section, m, tol);
    cmp.derived = {derived[0], derived[1]};

    const double direct = std::abs(cmp.closed_form[0] - cmp.derived[0]) +
                          std::abs(cmp.closed_form[1] - cmp.derived[1]);
    const double crossed = std::abs(cmp.closed_form[0] - cmp.derived[1]) +
                           std::abs(cmp.closed_form[1] - cmp.derived[0]);
    cmp.max_mismatch = 0.0;
    if (direct <= crossed) {
        cmp.max_mismatch = std::max(std::abs(cmp.closed_form[0] - cmp.derived[0]),
                                    std::abs(cmp.closed_form[1] - cmp.derived[1]));
    } else {
        cmp.max_mismatch = std::max(std::abs(cmp.closed_form[0] - cmp.derived[1]),
                                    std::abs(cmp.closed_form[1] - cmp.derived[0]));
    }

    const double scale = std::max(tau_scale_on_circle(pair, section, m, tol), 1e-300);
    for (int i = 0; i < 2; ++i) {
        cmp.closed_form_tau_residual[static_cast<std::size_t>(i)] =
            std::abs(tau_section(pair, section, m, cmp.closed_form[static_cast<std::size_t>(i)],
                                 tol)) /
            scale;
        cmp.derived_tau_residual[static_cast<std::size_t>(i)] =
            std::abs(tau_section(pair, section, m, cmp.derived[static_cast<std::size_t>(i)],
                                 tol)) /
            scale;
    }
    return cmp;
}

}  // namespace cmbethe

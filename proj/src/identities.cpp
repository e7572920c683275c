#include "cmbethe/identities.hpp"

#include <cmath>
#include <sstream>

#include "cmbethe/linalg.hpp"

namespace cmbethe {

namespace {

double vec_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (Complex z : v) s += std::norm(z);
    return std::sqrt(s);
}

ResidualReport make_report(std::string identity, Complex lhs, Complex rhs, double check_tol,
                           double floor) {
    ResidualReport r;
    r.identity = std::move(identity);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), floor});
    r.status = r.rel_residual <= check_tol ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

ResidualReport degenerate_report(std::string identity, std::string note) {
    ResidualReport r;
    r.identity = std::move(identity);
    r.status = CheckStatus::degenerate;
    r.note = std::move(note);
    return r;
}

// lambda I - Z
Matrix resolvent_shift(const Matrix& z, Complex lambda) {
    Matrix s = z * Complex{-1.0, 0.0};
    s.shift_diagonal(lambda);
    return s;
}

}  // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::degenerate: return "degenerate";
        case CheckStatus::fail: return "fail";
    }
    return "invalid";
}

ScalarData rescale_gauge(const ScalarData& data, Complex commutator_scale,
                         Complex adjugate_scale) {
    ScalarData out = data;
    for (auto& v : out.commutator.left) v *= commutator_scale;
    for (auto& v : out.commutator.right) v /= commutator_scale;
    for (auto& v : out.adjugate.left) v *= adjugate_scale;
    for (auto& v : out.adjugate.right) v /= adjugate_scale;
    out.gamma = data.gamma / adjugate_scale * commutator_scale;
    out.mu = data.mu / commutator_scale * adjugate_scale;
    return out;
}

std::array<ResidualReport, 3> check_lemma1(const CmPair& pair, Complex lam_a, Complex lam_b,
                                           const ScalarData& data, const Tolerances& tol,
                                           const CheckTolerances& check) {
    const PqValues at_a = evaluate_pq(pair, data, lam_a);
    const PqValues at_b = evaluate_pq(pair, data, lam_b);
    const double floor = tol.residual_floor;

    std::array<ResidualReport, 3> out;

    Matrix m1 = resolvent_shift(pair.z, lam_a) * pair.x;
    m1.shift_diagonal(Complex{1.0, 0.0});
    out[0] = make_report("lemma1.1", Lu(m1).determinant(), data.gamma * at_a.p,
                         check.lemma1, floor);

    Matrix m2 = pair.x * resolvent_shift(pair.z, lam_a);
    m2.shift_diagonal(Complex{-1.0, 0.0});
    out[1] = make_report("lemma1.2", Lu(m2).determinant(), -data.mu * at_a.q, check.lemma1,
                         floor);

    Matrix m3 = resolvent_shift(pair.z, lam_a) * pair.x * resolvent_shift(pair.z, lam_b);
    m3.shift_diagonal(lam_b - lam_a);
    out[2] = make_report("lemma1.3", Lu(m3).determinant(),
                         (lam_b - lam_a) * at_a.p * at_b.q, check.lemma1, floor);
    return out;
}

std::array<ResidualReport, 3> check_lemma1(const CmPair& pair, Complex lam_a, Complex lam_b,
                                           const Tolerances& tol,
                                           const CheckTolerances& check) {
    ScalarData data;
    try {
        data = scalar_data(pair, tol);
    } catch (const CmError& e) {
        const std::string what = e.what();
        if (what.find("vanishing adjugate") != std::string::npos) {
            return {degenerate_report("lemma1.1", what), degenerate_report("lemma1.2", what),
                    degenerate_report("lemma1.3", what)};
        }
        throw;
    }
    return check_lemma1(pair, lam_a, lam_b, data, tol, check);
}

namespace {

// X' = X + (root/eta)(lambda1 I - Z)^(-1) + m (lambda2 I - Z)^(-1); shared by
// the factorization check. Verifies the root first.
CmPair translated_pair_at_root(const CmPair& pair, const LatticeSection& section, Complex m,
                               Complex root, const Tolerances& tol,
                               const char* caller) {
    const double scale = std::max(tau_scale_on_circle(pair, section, m, tol), 1e-300);
    const double value = std::abs(tau_section(pair, section, m, root, tol));
    if (value > tol.root_verify * scale) {
        std::ostringstream os;
        os << caller << ": supplied root is not a root of tau^m (|tau| = " << value
           << ", circle max = " << scale << ")";
        throw CmError(os.str());
    }

    const int n = pair.dim();
    Matrix xp = pair.x;
    xp += Lu(resolvent_shift(pair.z, section.lambda1)).solve(Matrix::identity(n)) *
          (root / section.eta);
    xp += Lu(resolvent_shift(pair.z, section.lambda2)).solve(Matrix::identity(n)) * m;

    if (!numerically_singular(xp, std::max(tol.singular, 10.0 * tol.root_verify))) {
        std::ostringstream os;
        os << caller << ": det X' is not numerically zero at the supplied root";
        throw CmError(os.str());
    }
    PairValidation v = validate_pair(xp, pair.z, tol.rank_one);
    if (!v.accepted())
        throw CmError(std::string(caller) + ": translated pair failed Eq.(1) validation: " +
                      v.message);
    return *v.pair;
}

}  // namespace

ResidualReport check_factorization(const CmPair& pair, const LatticeSection& section,
                                   Complex m, Complex root, FactorSign sign,
                                   const Tolerances& tol, const CheckTolerances& check) {
    const std::string label =
        sign == FactorSign::plus ? "factorization.plus" : "factorization.minus";
    validate_section(section, pair.z, tol);

    const double lambda_scale =
        std::max({std::abs(section.lambda1), std::abs(section.lambda2), 1.0});
    if (std::abs(section.lambda1 - section.lambda2) <= tol.degeneracy_floor * lambda_scale)
        return degenerate_report(label, "lambda1 = lambda2: prefactor vanishes");

    const CmPair translated =
        translated_pair_at_root(pair, section, m, root, tol, "check_factorization");

    ScalarData data;
    try {
        data = scalar_data(translated, tol);
    } catch (const CmError& e) {
        const std::string what = e.what();
        if (what.find("vanishing adjugate") != std::string::npos)
            return degenerate_report(label, what);
        throw;
    }

    const Complex gamma_mu = data.gamma * data.mu;
    const double gm_scale = std::max(vec_norm(data.adjugate.right) *
                                             vec_norm(data.commutator.left) *
                                             vec_norm(data.commutator.right) *
                                             vec_norm(data.adjugate.left),
                                     1e-300);
    if (std::abs(gamma_mu) < tol.degeneracy_floor * gm_scale)
        return degenerate_report(label, "gamma * mu below the degeneracy floor");

    const Complex eta = section.eta;
    Complex lhs, rhs;
    if (sign == FactorSign::plus) {
        lhs = tau_section(pair, section, m - 1.0, root + eta, tol);
        rhs = (section.lambda1 - section.lambda2) / gamma_mu *
              tau_section(pair, section, m - 1.0, root, tol) *
              tau_section(pair, section, m, root + eta, tol);
    } else {
        lhs = tau_section(pair, section, m + 1.0, root - eta, tol);
        rhs = (section.lambda2 - section.lambda1) / gamma_mu *
              tau_section(pair, section, m + 1.0, root, tol) *
              tau_section(pair, section, m, root - eta, tol);
    }
    return make_report(label, lhs, rhs, check.factorization, tol.residual_floor);
}

ResidualReport check_hirota_ratio(const CmPair& pair, const LatticeSection& section,
                                  Complex m, Complex root, const Tolerances& tol,
                                  const CheckTolerances& check) {
    validate_section(section, pair.z, tol);

    // Root verification, same gate as the factorization checks.
    const double scale = std::max(tau_scale_on_circle(pair, section, m, tol), 1e-300);
    const double value = std::abs(tau_section(pair, section, m, root, tol));
    if (value > tol.root_verify * scale)
        throw CmError("check_hirota_ratio: supplied root is not a root of tau^m");

    const Complex eta = section.eta;
    const Complex n1 = tau_section(pair, section, m + 1.0, root, tol);
    const Complex n2 = tau_section(pair, section, m, root - eta, tol);
    const Complex n3 = tau_section(pair, section, m - 1.0, root + eta, tol);
    const Complex d1 = tau_section(pair, section, m + 1.0, root - eta, tol);
    const Complex d2 = tau_section(pair, section, m - 1.0, root, tol);
    const Complex d3 = tau_section(pair, section, m, root + eta, tol);

    const double tau_scale = std::max({std::abs(n1), std::abs(n2), std::abs(n3),
                                       std::abs(d1), std::abs(d2), std::abs(d3), 1e-300});
    const double floor = tol.degeneracy_floor * tau_scale;
    if (std::abs(d1) <= floor || std::abs(d2) <= floor || std::abs(d3) <= floor) {
        std::ostringstream os;
        os << "resonant configuration: |tau^{m+1}(x-eta)| = " << std::abs(d1)
           << ", |tau^{m-1}(x)| = " << std::abs(d2) << ", |tau^m(x+eta)| = " << std::abs(d3);
        return degenerate_report("hirota_ratio", os.str());
    }
    const Complex ratio = (n1 * n2 * n3) / (d1 * d2 * d3);
    return make_report("hirota_ratio", ratio, Complex{-1.0, 0.0}, check.hirota,
                       tol.residual_floor);
}

ResidualReport check_rnba(const std::vector<Complex>& roots_prev,
                          const std::vector<Complex>& roots_cur,
                          const std::vector<Complex>& roots_next, Complex eta, int j,
                          const Tolerances& tol, const CheckTolerances& check) {
    const std::size_t n = roots_cur.size();
    if (roots_prev.size() != n || roots_next.size() != n)
        throw CmError("check_rnba: root multisets have different sizes");
    if (eta == Complex{0.0, 0.0}) throw CmError("check_rnba: eta must be nonzero");
    if (j < 0 || static_cast<std::size_t>(j) >= n)
        throw CmError("check_rnba: particle index out of range");

    double scale = std::abs(eta);
    for (const auto& roots : {roots_prev, roots_cur, roots_next})
        for (Complex r : roots) scale = std::max(scale, std::abs(r));
    const double floor = tol.degeneracy_floor * std::max(scale, 1.0);

    const Complex xj = roots_cur[static_cast<std::size_t>(j)];
    Complex product{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const Complex num[3] = {xj - roots_prev[k], xj - roots_cur[k] + eta,
                                xj - roots_next[k] - eta};
        const Complex den[3] = {xj - roots_prev[k] + eta, xj - roots_cur[k] - eta,
                                xj - roots_next[k]};
        static const char* den_names[3] = {"x_j^m - x_k^{m-1} + eta", "x_j^m - x_k^m - eta",
                                           "x_j^m - x_k^{m+1}"};
        for (int t = 0; t < 3; ++t) {
            if (std::abs(den[t]) <= floor) {
                std::ostringstream os;
                os << "root collision: |" << den_names[t] << "| = " << std::abs(den[t])
                   << " at j = " << j << ", k = " << k;
                return degenerate_report("rnba", os.str());
            }
            product *= num[t] / den[t];
        }
    }
    return make_report("rnba", product, Complex{-1.0, 0.0}, check.rnba, tol.residual_floor);
}

}  // namespace cmbethe

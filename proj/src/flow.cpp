#include "cmbethe/flow.hpp"

#include <cmath>
#include <sstream>

#include "cmbethe/linalg.hpp"

namespace cmbethe {

namespace {

struct FlowParts {
    Matrix constant;  // -eta X (lambda1 I - Z)
    Matrix step;      // -eta (lambda2 I - Z)^(-1) (lambda1 I - Z)
};

FlowParts flow_parts(const CmPair& pair, const LatticeSection& section,
                     const Tolerances& tol) {
    if (std::abs(section.eta) == 0.0) throw CmError("flow: eta must be nonzero");
    const double dist = spectral_distance(section.lambda2, pair.z);
    const double scale = std::max(1.0, pair.z.max_abs());
    if (dist <= tol.spectral * scale)
        throw CmError("flow: lambda2 collides with the spectrum of Z");

    Matrix a = pair.z * Complex{-1.0, 0.0};
    a.shift_diagonal(section.lambda1);  // lambda1 I - Z
    Matrix b = pair.z * Complex{-1.0, 0.0};
    b.shift_diagonal(section.lambda2);  // lambda2 I - Z

    FlowParts parts{(pair.x * a) * (-section.eta), Lu(b).solve(a) * (-section.eta)};
    return parts;
}

}  // namespace

Matrix flow_matrix(const CmPair& pair, const LatticeSection& section, Complex m,
                   const Tolerances& tol) {
    FlowParts parts = flow_parts(pair, section, tol);
    return parts.constant + parts.step * m;
}

Matrix step_matrix(const CmPair& pair, const LatticeSection& section,
                   const Tolerances& tol) {
    return flow_parts(pair, section, tol).step;
}

std::vector<int> match_multisets(const std::vector<Complex>& a,
                                 const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw CmError("match_multisets: size mismatch");
    const int n = static_cast<int>(a.size());
    if (n == 0) return {};
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(j)]);
    return min_cost_assignment(cost);
}

Trajectory run_trajectory(const CmPair& pair, const LatticeSection& section, long m_from,
                          long m_to, const Tolerances& tol) {
    if (m_from > m_to) throw CmError("run_trajectory: m_from exceeds m_to");
    validate_section(section, pair.z, tol);

    Trajectory traj;
    traj.section = section;
    const double collision_threshold = 10.0 * std::abs(section.eta);

    for (long m = m_from; m <= m_to; ++m) {
        const Complex mc{static_cast<double>(m), 0.0};
        std::vector<Complex> roots = tau_roots(pair, section, mc, tol);
        if (traj.roots.empty()) {
            sort_complex(roots);
        } else {
            const std::vector<Complex>& prev = traj.roots.back();
            const std::vector<int> perm = match_multisets(prev, roots);
            std::vector<Complex> aligned(roots.size());
            double cost = 0.0;
            bool collision = false;
            for (std::size_t j = 0; j < roots.size(); ++j) {
                aligned[j] = roots[static_cast<std::size_t>(perm[j])];
                const double d = std::abs(prev[j] - aligned[j]);
                cost += d;
                if (d > collision_threshold) collision = true;
            }
            roots = std::move(aligned);
            traj.match_cost.push_back(cost);
            traj.collision_flag.push_back(collision);
        }
        traj.m_values.push_back(mc);
        traj.roots.push_back(std::move(roots));
    }
    return traj;
}

}  // namespace cmbethe

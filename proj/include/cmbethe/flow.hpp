#pragma once
// The free flow realizing the discrete dynamics: X(m) = -eta X (lambda1 I - Z)
// - m eta (lambda2 I - Z)^(-1) (lambda1 I - Z), its constant step matrix, and
// matched root trajectories over integer time ranges.

#include <vector>

#include "cmbethe/tau.hpp"

namespace cmbethe {

// X(m). Requires lambda2 off spec(Z); m may be any complex number.
Matrix flow_matrix(const CmPair& pair, const LatticeSection& section, Complex m,
                   const Tolerances& tol = Tolerances{});

// Delta = -eta (lambda2 I - Z)^(-1) (lambda1 I - Z); flow_matrix(m+1) -
// flow_matrix(m) = Delta identically (shared computation path, so the
// linearity X(m) = X(0) + m Delta is exact to rounding).
Matrix step_matrix(const CmPair& pair, const LatticeSection& section,
                   const Tolerances& tol = Tolerances{});

// Permutation pi minimizing sum_i |a[i] - b[pi[i]]| over assignments.
std::vector<int> match_multisets(const std::vector<Complex>& a,
                                 const std::vector<Complex>& b);

struct Trajectory {
    LatticeSection section;
    std::vector<Complex> m_values;           // consecutive integers m_from..m_to
    std::vector<std::vector<Complex>> roots;  // roots[i][j]: particle j at m_values[i]
    std::vector<double> match_cost;           // per step (size m_count - 1)
    std::vector<bool> collision_flag;         // matched step distance > 10 |eta|

    int particle_count() const { return roots.empty() ? 0 : static_cast<int>(roots[0].size()); }
};

// Roots of tau^m for each integer m in [m_from, m_to], chained by optimal
// assignment so column j follows one particle. The first level is sorted
// canonically for reproducibility. Collisions are flagged, never fatal.
Trajectory run_trajectory(const CmPair& pair, const LatticeSection& section, long m_from,
                          long m_to, const Tolerances& tol = Tolerances{});

}  // namespace cmbethe

#pragma once
// Seed-deterministic sampling for sweeps and tests. The transforms are
// hand-rolled on top of mt19937_64 so identical seeds give identical draws on
// every conforming implementation.

#include <cmath>
#include <cstdint>
#include <random>

#include "cmbethe/tau.hpp"

namespace cmbethe {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }
    Complex unit_disk() {
        for (;;) {
            const double x = uniform(-1.0, 1.0);
            const double y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0) return {x, y};
        }
    }
    Complex standard_complex_normal() {
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * uniform();
        return {r * std::cos(theta), r * std::sin(theta)};
    }

  private:
    std::mt19937_64 gen_;
};

// Cauchy pair with positions uniform in the unit disk (rejection-sampled for
// min separation 1e-2) and standard complex normal momenta.
CmPair random_cauchy_pair(Rng& rng, int n, const Tolerances& tol = Tolerances{});

// Cauchy pair translated by -x_k I so X has exactly one zero eigenvalue
// (det X = 0 while staying in the phase space).
CmPair random_singular_pair(Rng& rng, int n, const Tolerances& tol = Tolerances{});

// Lattice section well clear of spec(Z): poles at a safe spectral distance,
// |lambda1 - lambda2| bounded below, |eta| in [1/2, 3/2].
LatticeSection generic_section(Rng& rng, const CmPair& pair,
                               const Tolerances& tol = Tolerances{});

}  // namespace cmbethe

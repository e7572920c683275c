#include "cmbethe/sampling.hpp"

#include <cmath>
#include <vector>

#include "cmbethe/linalg.hpp"

namespace cmbethe {

CmPair random_cauchy_pair(Rng& rng, int n, const Tolerances& tol) {
    const double min_sep = 1e-2;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Complex> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = rng.unit_disk();
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            for (int k = j + 1; k < n; ++k)
                if (std::abs(x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(k)]) <
                    min_sep) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        std::vector<Complex> p(static_cast<std::size_t>(n));
        for (auto& v : p) v = rng.standard_complex_normal();
        return cm_pair_from_positions(x, p, tol);
    }
    throw CmError("random_cauchy_pair: could not separate positions (n too large?)");
}

CmPair random_singular_pair(Rng& rng, int n, const Tolerances& tol) {
    CmPair pair = random_cauchy_pair(rng, n, tol);
    const int k = rng.uniform_int(0, n - 1);
    const Complex shift = -pair.x(k, k);
    return apply_symmetry(pair, TranslateX{RationalFunction{{shift}, {}}}, tol);
}

LatticeSection generic_section(Rng& rng, const CmPair& pair, const Tolerances& tol) {
    const std::vector<Complex> spectrum = eigenvalues(pair.z);
    double rho = 0.0;
    for (Complex ev : spectrum) rho = std::max(rho, std::abs(ev));
    const double base = rho + 1.5;

    const double two_pi = 2.0 * 3.141592653589793238462643383279502884;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        LatticeSection s;
        s.eta = std::polar(rng.uniform(0.5, 1.5), two_pi * rng.uniform());
        s.lambda1 = std::polar(base * rng.uniform(1.0, 1.6), two_pi * rng.uniform());
        s.lambda2 = std::polar(base * rng.uniform(1.0, 1.6), two_pi * rng.uniform());
        if (std::abs(s.lambda1 - s.lambda2) < 0.3) continue;
        double dist = std::numeric_limits<double>::infinity();
        for (Complex ev : spectrum) {
            dist = std::min(dist, std::abs(s.lambda1 - ev));
            dist = std::min(dist, std::abs(s.lambda2 - ev));
        }
        if (dist < 0.4) continue;
        validate_section(s, pair.z, tol);
        return s;
    }
    throw CmError("generic_section: sampling failed");
}

}  // namespace cmbethe

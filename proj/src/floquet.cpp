#include "symphill/floquet.hpp"
#include "symphill/errors.hpp"

#include <cmath>
#include <limits>

namespace symphill {

std::string to_string(Stability s)
{
    switch (s) {
    case Stability::stable: return "stable";
    case Stability::marginal: return "marginal";
    case Stability::unstable: return "unstable";
    }
    return "?";
}

double log_distance(double abs_minus_one) { return std::log10(std::abs(abs_minus_one + log_delta)); }

BlockPropagator monodromy(const HillProblem& p, const Method& m, long steps_per_period)
{
    if (steps_per_period < 1) throw ConfigError("monodromy: steps per period must be at least 1");
    BlockPropagator phi(p.dim);
    m.integrate(p, 0, p.period / steps_per_period, steps_per_period, phi);
    return phi;
}

StabilityReport stability(const Matrix& phiT, double tol)
{
    StabilityReport rep;
    rep.tol_classify = tol;
    rep.eigenvalues = eigenvalues(phiT);
    std::size_t n = rep.eigenvalues.size();
    bool any_unstable = false, any_marginal = false;
    for (const auto& l : rep.eigenvalues) {
        double d = std::abs(l) - 1;
        rep.abs_minus_one.push_back(d);
        Stability s = d > tol ? Stability::unstable : (d >= -tol ? Stability::marginal : Stability::stable);
        any_unstable |= s == Stability::unstable;
        any_marginal |= s == Stability::marginal;
        rep.per_eigenvalue.push_back(s);
    }
    rep.overall = any_unstable ? Stability::unstable : (any_marginal ? Stability::marginal : Stability::stable);

    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (used[i] || used[j]) continue;
                double d = std::abs(rep.eigenvalues[i] * rep.eigenvalues[j] - 1.0);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        used[bi] = used[bj] = true;
        rep.pairing_defect = std::max(rep.pairing_defect, best);
    }
    if (phiT.rows() % 2 == 0) rep.symplectic_defect = symplectic_defect(phiT);
    rep.det_minus_one = phiT.determinant() - 1;
    return rep;
}

Matrix propagate_periods(const Matrix& phiT, long n, CostLedger& ledger)
{
    if (n < 0) throw ConfigError("propagate_periods: n must be non-negative");
    Matrix result = Matrix::Identity(phiT.rows(), phiT.cols());
    Matrix base = phiT;
    bool have = false;
    while (n > 0) {
        if (n & 1) {
            if (have) {
                result = base * result;
                ledger.add_products(4);
            } else {
                result = base;
                have = true;
            }
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
            ledger.add_products(4);
        }
    }
    return result;
}

}

#pragma once

#include "symphill/matrix.hpp"

namespace symphill {

// Truncated exp(tau [[0, I], [c, 0]]) = [[sigma, mu + delta], [nu, sigma]].
struct HarmonicExpFactors {
    Matrix sigma, mu, nu, delta;
    Matrix g; // (sigma - I) = c g, reused by the correction
    Matrix c;
    int m = 0;
    double tau = 0;
    bool corrected = false;

    Matrix upper() const { return corrected ? Matrix(mu + delta) : mu; }
    Matrix assemble() const;
};

constexpr double default_correction_cond_cap = 1e8;

HarmonicExpFactors harmonic_exp(const Matrix& c, double tau, int m, CostLedger& ledger);

// Throws SingularMatrixError when mu is too ill-conditioned to correct.
HarmonicExpFactors symplectify(HarmonicExpFactors f, CostLedger& ledger,
                               double cond_cap = default_correction_cond_cap);

// harmonic_exp + symplectify with the skip-and-record fallback
HarmonicExpFactors harmonic_exp_symplectic(const Matrix& c, double tau, int m, BlockPropagator& phi);

void harmonic_apply(const HarmonicExpFactors& f, BlockPropagator& phi);

// left-multiplies by [[I, 0], [scale c, I]]
void exp_shear_apply(const Matrix& c_block, double scale, BlockPropagator& phi);

// left-multiplies by [[I, a I], [0, I]]; free
void drift_apply(double a, BlockPropagator& phi);

// left-multiplies by diag(L, L^{-T}), L = I + w + w^2/2
void lambda_block_apply(const Matrix& w, BlockPropagator& phi);

// r x r block times an r x k slab, charged as 2 products
Matrix slab_mul(const Matrix& block, const Matrix& slab, CostLedger& ledger);

}

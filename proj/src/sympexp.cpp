#include "symphill/sympexp.hpp"
#include "symphill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace symphill {

Matrix HarmonicExpFactors::assemble() const
{
    auto r = sigma.rows();
    Matrix b(2 * r, 2 * r);
    b << sigma, upper(), nu, sigma;
    return b;
}

Matrix slab_mul(const Matrix& block, const Matrix& slab, CostLedger& ledger)
{
    if (block.cols() != slab.rows()) throw DimensionError("slab_mul: dimension mismatch");
    ledger.add_products(2);
    return block * slab;
}

HarmonicExpFactors harmonic_exp(const Matrix& c_in, double tau, int m, CostLedger& ledger)
{
    if (m < 1) throw ConfigError("harmonic_exp: truncation m must be at least 1");
    if (c_in.rows() != c_in.cols()) throw DimensionError("harmonic_exp: block must be square");
    double asym = norm1(c_in - c_in.transpose());
    if (asym > 1e-10 * (1 + norm1(c_in))) throw ConfigError("harmonic_exp: block is not symmetric");
    auto r = c_in.rows();
    Matrix c = 0.5 * (c_in + c_in.transpose());

    // powers c^0 .. c^{m+1}; c^2 onward are counted products
    std::vector<Matrix> pw;
    pw.push_back(Matrix::Identity(r, r));
    pw.push_back(c);
    for (int n = 2; n <= m + 1; ++n) pw.push_back(mul_counted(pw[n - 1], c, ledger));

    HarmonicExpFactors f;
    f.m = m;
    f.tau = tau;
    f.c = c;
    f.sigma = Matrix::Identity(r, r);
    f.mu = Matrix::Zero(r, r);
    f.nu = Matrix::Zero(r, r);
    f.g = Matrix::Zero(r, r);
    double even = 1.0, odd = tau; // tau^{2n}/(2n)!, tau^{2n+1}/(2n+1)!
    for (int n = 0; n <= m + 1; ++n) {
        if (n > 0) {
            f.sigma += even * pw[n];
            f.g += even * pw[n - 1];
        }
        if (n <= m) {
            f.mu += odd * pw[n];
            f.nu += odd * pw[n + 1];
        }
        even *= tau * tau / ((2 * n + 1) * (2 * n + 2));
        odd *= tau * tau / ((2 * n + 2) * (2 * n + 3));
    }
    f.delta = Matrix::Zero(r, r);
    return f;
}

HarmonicExpFactors symplectify(HarmonicExpFactors f, CostLedger& ledger, double cond_cap)
{
    auto r = f.sigma.rows();
    // mu = tau (I + O(tau^2 c)); measure its conditioning relative to tau I as well
    Eigen::PartialPivLU<Matrix> lu(f.mu);
    double rc = lu.rcond();
    double cond = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    double mn = norm1(f.mu);
    double scaled = mn > 0 ? cond * std::abs(f.tau) / mn : std::numeric_limits<double>::infinity();
    double worst = std::max(cond, scaled);
    if (!(worst < cond_cap)) throw SingularMatrixError("symplectify: mu is too close to singular", worst);

    // (sigma^2 - I) nu^{-1} with sigma - I = c g and nu = c mu, without dividing by c
    Matrix rhs = mul_counted(f.g, f.sigma + Matrix::Identity(r, r), ledger);
    ledger.add_solves(1);
    Matrix x = lu.solve(rhs);
    x = 0.5 * (x + x.transpose());
    f.delta = x - f.mu;
    f.corrected = true;
    return f;
}

HarmonicExpFactors harmonic_exp_symplectic(const Matrix& c, double tau, int m, BlockPropagator& phi)
{
    auto f = harmonic_exp(c, tau, m, phi.ledger);
    try {
        return symplectify(f, phi.ledger);
    } catch (const SingularMatrixError&) {
        ++phi.uncorrected_exponentials;
        return f;
    }
}

void harmonic_apply(const HarmonicExpFactors& f, BlockPropagator& phi)
{
    if (f.sigma.rows() != phi.half_dim()) throw DimensionError("harmonic_apply: dimension mismatch");
    Matrix top = phi.top();
    Matrix bot = phi.bottom();
    Matrix up = f.upper();
    phi.top() = slab_mul(f.sigma, top, phi.ledger) + slab_mul(up, bot, phi.ledger);
    phi.bottom() = slab_mul(f.nu, top, phi.ledger) + slab_mul(f.sigma, bot, phi.ledger);
}

void exp_shear_apply(const Matrix& c_block, double scale, BlockPropagator& phi)
{
    if (c_block.rows() != phi.half_dim() || c_block.cols() != phi.half_dim())
        throw DimensionError("exp_shear_apply: dimension mismatch");
    if (scale == 0 || c_block.isZero(0)) return;
    Matrix top = phi.top();
    phi.bottom() += scale * slab_mul(c_block, top, phi.ledger);
}

void drift_apply(double a, BlockPropagator& phi)
{
    if (a == 0) return;
    Matrix bot = phi.bottom();
    phi.top() += a * bot;
}

void lambda_block_apply(const Matrix& w, BlockPropagator& phi)
{
    int r = phi.half_dim();
    if (w.rows() != r || w.cols() != r) throw DimensionError("lambda_block_apply: dimension mismatch");
    Matrix lam = Matrix::Identity(r, r) + w + 0.5 * mul_counted(w, w, phi.ledger);
    Matrix lam_it = solve_counted(lam.transpose(), Matrix::Identity(r, r), phi.ledger);
    Matrix top = phi.top();
    Matrix bot = phi.bottom();
    phi.top() = slab_mul(lam, top, phi.ledger);
    phi.bottom() = slab_mul(lam_it, bot, phi.ledger);
}

}

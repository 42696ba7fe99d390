#include "symphill/matrix.hpp"
#include "symphill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symphill {

std::string thirds_to_string(std::int64_t thirds)
{
    std::int64_t whole = thirds / 3, rem = thirds % 3;
    if (rem == 0) return std::to_string(whole);
    return std::to_string(whole) + "+" + std::to_string(rem) + "/3";
}

std::string CostLedger::to_string() const { return thirds_to_string(thirds_); }

Matrix mul_counted(const Matrix& a, const Matrix& b, CostLedger& ledger)
{
    if (a.cols() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols())
        throw DimensionError("mul_counted: expected equal square dimensions");
    ledger.add_products(1);
    return a * b;
}

double norm1(const Matrix& m)
{
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

double condition_estimate(const Matrix& a)
{
    Eigen::PartialPivLU<Matrix> lu(a);
    double rc = lu.rcond();
    if (!(rc > 0)) return std::numeric_limits<double>::infinity();
    return 1.0 / rc;
}

Matrix solve_counted(const Matrix& a, const Matrix& rhs, CostLedger& ledger, double cond_cap)
{
    if (a.rows() != a.cols() || rhs.rows() != a.rows())
        throw DimensionError("solve_counted: dimension mismatch");
    Eigen::PartialPivLU<Matrix> lu(a);
    double rc = lu.rcond();
    double cond = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(cond < cond_cap) || !a.allFinite())
        throw SingularMatrixError("solve_counted: matrix is singular or ill-conditioned", cond);
    ledger.add_solves(1);
    return lu.solve(rhs);
}

std::vector<Complex> eigenvalues(const Matrix& m)
{
    if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix not square");
    if (!m.allFinite()) throw EigenError("eigenvalues: non-finite entries");
    Eigen::EigenSolver<Matrix> es(m, false);
    if (es.info() != Eigen::Success) throw EigenError("eigenvalues: QR iteration did not converge");
    std::vector<Complex> ev(es.eigenvalues().begin(), es.eigenvalues().end());
    std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return a.imag() > b.imag();
    });
    return ev;
}

Matrix symplectic_form(int r)
{
    Matrix j = Matrix::Zero(2 * r, 2 * r);
    j.topRightCorner(r, r).setIdentity();
    j.bottomLeftCorner(r, r) = -Matrix::Identity(r, r);
    return j;
}

double symplectic_defect(const Matrix& m)
{
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw DimensionError("symplectic_defect: need an even square matrix");
    Matrix j = symplectic_form(static_cast<int>(m.rows() / 2));
    return norm1(m.transpose() * j * m - j);
}

BlockPropagator::BlockPropagator(int r) : r_(r), state_(Matrix::Identity(2 * r, 2 * r))
{
    if (r < 1) throw DimensionError("BlockPropagator: half dimension must be positive");
}

BlockPropagator::BlockPropagator(int r, Matrix state) : r_(r), state_(std::move(state))
{
    if (r < 1 || state_.rows() != 2 * r)
        throw DimensionError("BlockPropagator: state must have 2r rows");
}

}

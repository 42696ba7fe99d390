#include "symphill/problem.hpp"
#include "symphill/errors.hpp"

#include <cmath>

namespace symphill {

HillProblem mathieu(double omega, double eps)
{
    HillProblem p;
    p.name = "mathieu";
    p.dim = 1;
    p.period = M_PI;
    p.symmetric = true;
    double w2 = omega * omega;
    p.evaluator = [w2, eps](double t) {
        Matrix m(1, 1);
        m(0, 0) = w2 + eps * std::cos(2 * t);
        return m;
    };
    return p;
}

Matrix pascal_matrix(int r)
{
    if (r < 1) throw DimensionError("pascal_matrix: r must be positive");
    Matrix d = Matrix::Ones(r, r);
    for (int i = 1; i < r; ++i)
        for (int j = 1; j < r; ++j) d(i, j) = d(i - 1, j) + d(i, j - 1);
    return d;
}

HillProblem pascal_hill(int r, double eps)
{
    HillProblem p;
    p.name = "pascal";
    p.dim = r;
    p.period = M_PI;
    p.symmetric = true;
    Matrix a = pascal_matrix(r) + double(r) * r * Matrix::Identity(r, r);
    p.evaluator = [a, eps, r](double t) {
        Matrix m = a;
        m.diagonal().array() += eps * std::cos(2 * t) + 0.1 * eps * std::cos(4 * t);
        return m;
    };
    return p;
}

HillProblem paul_trap(double e0, double e1)
{
    HillProblem p;
    p.name = "paul_trap";
    p.dim = 3;
    p.period = 2 * M_PI;
    p.symmetric = true;
    p.evaluator = [e0, e1](double t) {
        double s = e0 + e1 * std::cos(t);
        Matrix m = Matrix::Zero(3, 3);
        m(0, 0) = s;
        m(1, 1) = -s;
        return m;
    };
    return p;
}

FirstOrderSystem to_first_order(const HillProblem& p, bool augment)
{
    if (augment && !p.forcing) throw ConfigError("to_first_order: augmentation requires a forcing term");
    FirstOrderSystem s;
    int r = p.dim;
    s.half_dim = r;
    s.augmented = augment;
    s.dim = augment ? 2 * r + 1 : 2 * r;
    s.period = p.period;
    s.source = p;
    s.evaluator = [p, r, augment](double t) {
        int n = augment ? 2 * r + 1 : 2 * r;
        Matrix a = Matrix::Zero(n, n);
        a.block(0, r, r, r).setIdentity();
        a.block(r, 0, r, r) = -p.evaluator(t);
        if (augment) a.block(r, 2 * r, r, 1) = (*p.forcing)(t);
        return a;
    };
    return s;
}

Matrix apply_first_order(const FirstOrderSystem& sys, double t, const Matrix& y, CostLedger& ledger)
{
    int r = sys.half_dim;
    if (y.rows() != sys.dim) throw DimensionError("apply_first_order: state has wrong row count");
    Matrix out = Matrix::Zero(y.rows(), y.cols());
    out.topRows(r) = y.middleRows(r, r);
    out.middleRows(r, r) = -sys.source.evaluator(t) * y.topRows(r);
    if (sys.augmented) out.middleRows(r, r) += (*sys.source.forcing)(t) * y.row(2 * r);
    ledger.add_products(2);
    return out;
}

}

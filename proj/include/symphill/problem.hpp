#pragma once

#include "symphill/matrix.hpp"

#include <functional>
#include <optional>
#include <string>

namespace symphill {

using MatrixFn = std::function<Matrix(double)>;
using VectorFn = std::function<Eigen::VectorXd(double)>;

struct HillProblem {
    std::string name;
    int dim = 1;
    double period = 1.0;
    MatrixFn evaluator;
    bool symmetric = false;
    std::optional<VectorFn> forcing;

    Matrix operator()(double t) const { return evaluator(t); }
};

HillProblem mathieu(double omega, double eps);
Matrix pascal_matrix(int r);
HillProblem pascal_hill(int r, double eps);
HillProblem paul_trap(double e_ratio0, double e_ratio1);

struct FirstOrderSystem {
    int dim = 2;
    int half_dim = 1;
    bool augmented = false;
    double period = 1.0;
    MatrixFn evaluator;
    HillProblem source;
};

FirstOrderSystem to_first_order(const HillProblem& p, bool augment);

// A(t) * y using the block structure; charges 2 products
Matrix apply_first_order(const FirstOrderSystem& sys, double t, const Matrix& y, CostLedger& ledger);

}

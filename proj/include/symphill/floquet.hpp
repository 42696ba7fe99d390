#pragma once

#include "symphill/matrix.hpp"
#include "symphill/method.hpp"

#include <string>
#include <vector>

namespace symphill {

enum class Stability { stable, marginal, unstable };
std::string to_string(Stability s);

struct StabilityReport {
    std::vector<Complex> eigenvalues;
    std::vector<double> abs_minus_one;
    std::vector<Stability> per_eigenvalue;
    Stability overall = Stability::stable;
    double pairing_defect = 0;
    double symplectic_defect = 0;
    double det_minus_one = 0;
    double tol_classify = 1e-9;
};

constexpr double log_delta = 1e-14;
double log_distance(double abs_minus_one);

BlockPropagator monodromy(const HillProblem& p, const Method& m, long steps_per_period);
StabilityReport stability(const Matrix& phiT, double tol_classify = 1e-9);

// phiT^n by binary powering; each 2r x 2r product is charged as four block products
Matrix propagate_periods(const Matrix& phiT, long n, CostLedger& ledger);

}

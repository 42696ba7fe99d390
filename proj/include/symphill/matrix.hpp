#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace symphill {

using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

// Cost in units of one dense r x r product, kept as an exact count of thirds.
class CostLedger {
public:
    void add_products(std::int64_t n) { thirds_ += 3 * n; }
    void add_solves(std::int64_t n) { thirds_ += 4 * n; }
    void add_thirds(std::int64_t n) { thirds_ += n; }
    void merge(const CostLedger& o) { thirds_ += o.thirds_; }
    std::int64_t thirds() const { return thirds_; }
    double products() const { return thirds_ / 3.0; }
    std::string to_string() const;
    bool operator==(const CostLedger&) const = default;

private:
    std::int64_t thirds_ = 0;
};

std::string thirds_to_string(std::int64_t thirds);

Matrix mul_counted(const Matrix& a, const Matrix& b, CostLedger& ledger);

constexpr double default_condition_cap = 1e13;

Matrix solve_counted(const Matrix& a, const Matrix& rhs, CostLedger& ledger,
                     double cond_cap = default_condition_cap);

// reciprocal-condition based estimate in the 1-norm
double condition_estimate(const Matrix& a);

std::vector<Complex> eigenvalues(const Matrix& m);

double norm1(const Matrix& m);
Matrix symplectic_form(int r);
double symplectic_defect(const Matrix& m);

// 2r rows, any number of columns; factors act from the left on the top/bottom halves
class BlockPropagator {
public:
    BlockPropagator() = default;
    explicit BlockPropagator(int r);
    BlockPropagator(int r, Matrix state);

    int half_dim() const { return r_; }
    Matrix& state() { return state_; }
    const Matrix& state() const { return state_; }
    auto top() { return state_.topRows(r_); }
    auto bottom() { return state_.middleRows(r_, r_); }
    auto top() const { return state_.topRows(r_); }
    auto bottom() const { return state_.middleRows(r_, r_); }

    CostLedger ledger;
    long uncorrected_exponentials = 0;

private:
    int r_ = 0;
    Matrix state_;
};

}

#pragma once

#include "symphill/method.hpp"

#include <limits>
#include <vector>

namespace symphill {

struct ButcherTableau {
    std::vector<std::vector<double>> a;
    std::vector<double> b, c;
    int order = 0;
    bool explicit_method = true;

    int stages() const { return static_cast<int>(b.size()); }
};

// c is filled from the row sums when empty
ButcherTableau make_tableau(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> c, int order);
ButcherTableau gauss_legendre6();
ButcherTableau classical_rk4();

struct SplittingTable {
    std::vector<double> a, b;
    int order = 0;

    int stages() const { return static_cast<int>(a.size()); }
};

SplittingTable make_splitting(std::vector<double> a, std::vector<double> b, int order);
SplittingTable leapfrog_table();

struct RkglStats {
    int iterations = 0;
    double last_difference = 0;
};

constexpr double default_rkgl_tol = 100 * std::numeric_limits<double>::epsilon();

RkglStats step_rkgl6(const HillProblem& p, double t, double h, BlockPropagator& phi,
                     double tol = default_rkgl_tol, int max_iter = 20);

void step_splitting(const HillProblem& p, double t, double h, BlockPropagator& phi, const SplittingTable& table);

void step_explicit_rk(const FirstOrderSystem& sys, double t, double h, Matrix& phi, const ButcherTableau& tab,
                      CostLedger& ledger);

class RkglMethod : public Method {
public:
    RkglMethod(double tol = default_rkgl_tol, int max_iter = 20) : tol_(tol), max_iter_(max_iter) {}
    std::string name() const override { return "rkgl6"; }
    int order() const override { return 6; }
    void integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                   const StepObserver& observer = {}) const override;
    std::string metadata() const override;
    // same as integrate, returning the sweep count of every step
    std::vector<int> integrate_counted(const HillProblem& p, double t0, double h, long steps,
                                       BlockPropagator& phi, const StepObserver& observer = {}) const;

private:
    double tol_;
    int max_iter_;
};

class SplittingMethod : public Method {
public:
    SplittingMethod(SplittingTable table, std::string name) : table_(std::move(table)), name_(std::move(name)) {}
    std::string name() const override { return name_; }
    int order() const override { return table_.order; }
    void integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                   const StepObserver& observer = {}) const override;

private:
    SplittingTable table_;
    std::string name_;
};

class ExplicitRkMethod : public Method {
public:
    ExplicitRkMethod(ButcherTableau tab, std::string name);
    std::string name() const override { return name_; }
    int order() const override { return tab_.order; }
    void integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                   const StepObserver& observer = {}) const override;

private:
    ButcherTableau tab_;
    std::string name_;
};

}

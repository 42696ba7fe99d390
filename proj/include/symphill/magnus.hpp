#pragma once

#include "symphill/method.hpp"
#include "symphill/quadrature.hpp"
#include "symphill/sympexp.hpp"

#include <array>
#include <vector>

namespace symphill {

enum class FactorKind { shear, harmonic, lambda };

// shear:    exp([[0, 0], [block, 0]])
// harmonic: exp([[0, a I], [block, 0]]), evaluated as tau = a, c = block / a
// lambda:   exp(diag(block, -block^T)) approximated by diag(L, L^{-T})
struct Factor {
    FactorKind kind = FactorKind::shear;
    double a = 0;
    Matrix block;
};

// factors in application order: factors.front() acts first
struct StepPlan {
    std::vector<Factor> factors;
};

void apply_factor(const Factor& f, int m, BlockPropagator& phi);
Factor merge_factors(const Factor& first, const Factor& second);

class MagnusScheme : public Method {
public:
    MagnusScheme(QuadratureRule rule, int m) : rule_(std::move(rule)), m_(m) {}

    virtual StepPlan plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const = 0;
    // true when the last factor of a step and the first factor of the next merge exactly
    virtual bool merges_ends() const { return false; }

    StepPlan plan(const HillProblem& p, double t, double h, CostLedger& ledger) const;
    void step(const HillProblem& p, double t, double h, BlockPropagator& phi) const;
    void integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                   const StepObserver& observer = {}) const override;
    std::string metadata() const override;

    const QuadratureRule& rule() const { return rule_; }
    int exp_order() const { return m_; }

protected:
    QuadratureRule rule_;
    int m_;
};

class Phi1Order6 : public MagnusScheme {
public:
    explicit Phi1Order6(int m = 5, QuadratureRule rule = gl6()) : MagnusScheme(std::move(rule), m) {}
    std::string name() const override { return "phi1_6"; }
    int order() const override { return 6; }
    bool merges_ends() const override { return true; }
    StepPlan plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const override;
    static const std::array<double, 6>& coefficients();
};

class Phi2Order6 : public MagnusScheme {
public:
    explicit Phi2Order6(int m = 5, QuadratureRule rule = gl6()) : MagnusScheme(std::move(rule), m) {}
    std::string name() const override { return "phi2_6"; }
    int order() const override { return 6; }
    bool merges_ends() const override { return true; }
    StepPlan plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const override;
    static const std::array<double, 6>& coefficients();
};

class Phi3Order6 : public MagnusScheme {
public:
    explicit Phi3Order6(int m = 5, QuadratureRule rule = gl6()) : MagnusScheme(std::move(rule), m) {}
    std::string name() const override { return "phi3_6"; }
    int order() const override { return 6; }
    StepPlan plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const override;
    static const std::array<double, 6>& coefficients();
};

class Phi5Order8 : public MagnusScheme {
public:
    explicit Phi5Order8(int m = 5, QuadratureRule rule = gl8());
    Phi5Order8(std::array<double, 16> x, int m = 5, QuadratureRule rule = gl8());
    std::string name() const override { return "phi5_8"; }
    int order() const override { return 8; }
    StepPlan plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const override;
    static const std::array<double, 16>& printed_coefficients();
    const std::array<double, 16>& x() const { return x_; }

private:
    std::array<double, 16> x_;
};

// rows of x_{i,k}, k = 1..4, applied in row order
class CommutatorFreeScheme : public MagnusScheme {
public:
    CommutatorFreeScheme(std::vector<std::vector<double>> rows, int order, int m = 5);
    std::string name() const override { return "cf"; }
    int order() const override { return order_; }
    StepPlan plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const override;
    const std::vector<std::vector<double>>& rows() const { return rows_; }

private:
    std::vector<std::vector<double>> rows_;
    int order_;
};

void step_phi1_6(const HillProblem& p, double t, double h, BlockPropagator& phi);
void step_phi2_6(const HillProblem& p, double t, double h, BlockPropagator& phi);
void step_phi3_6(const HillProblem& p, double t, double h, BlockPropagator& phi);
void step_phi5_8(const HillProblem& p, double t, double h, BlockPropagator& phi);
void step_cf(const HillProblem& p, double t, double h, BlockPropagator& phi, const std::vector<std::vector<double>>& table);

// The two-exponential method written directly in the samples M1, M2, M3.
// The step is [[I,0],[hC2,I]] exp(h/2 [[0,I],[D2,0]]) exp(h/2 [[0,I],[D1,0]]) [[I,0],[hC1,I]].
struct Phi2Blocks {
    Matrix c1, c2, d1, d2;
};
Phi2Blocks phi2_blocks(const Matrix& m1, const Matrix& m2, const Matrix& m3, double h);

}

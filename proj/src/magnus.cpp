#include "symphill/magnus.hpp"
#include "symphill/errors.hpp"

#include <cmath>
#include <sstream>

namespace symphill {

void apply_factor(const Factor& f, int m, BlockPropagator& phi)
{
    switch (f.kind) {
    case FactorKind::shear:
        exp_shear_apply(f.block, 1.0, phi);
        break;
    case FactorKind::harmonic: {
        if (f.a == 0) throw ConfigError("harmonic factor with zero time coefficient");
        auto hx = harmonic_exp_symplectic(f.block / f.a, f.a, m, phi);
        harmonic_apply(hx, phi);
        break;
    }
    case FactorKind::lambda:
        lambda_block_apply(f.block, phi);
        break;
    }
}

Factor merge_factors(const Factor& first, const Factor& second)
{
    if (first.kind != second.kind || first.kind == FactorKind::harmonic)
        throw ConfigError("merge_factors: only shear or lambda factors of equal kind merge");
    return {first.kind, 0, first.block + second.block};
}

StepPlan MagnusScheme::plan(const HillProblem& p, double t, double h, CostLedger& ledger) const
{
    if (!p.symmetric) throw ConfigError(name() + ": requires a symmetric problem");
    auto g = generators(p, rule_, t, h, order());
    if (!g.p.allFinite() || !g.q.allFinite() || !g.r.allFinite() || (g.has_s && !g.s.allFinite()))
        throw NumericalError(name() + ": non-finite coefficient samples");
    return plan_from_generators(g, ledger);
}

void MagnusScheme::step(const HillProblem& p, double t, double h, BlockPropagator& phi) const
{
    auto pl = plan(p, t, h, phi.ledger);
    for (const auto& f : pl.factors) apply_factor(f, m_, phi);
}

void MagnusScheme::integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                             const StepObserver& observer) const
{
    if (phi.half_dim() != p.dim) throw DimensionError(name() + ": propagator and problem dimensions differ");
    bool amortize = merges_ends() && !observer;
    std::optional<Factor> pending;
    for (long n = 0; n < steps; ++n) {
        double t = t0 + n * h;
        try {
            if (!amortize) {
                step(p, t, h, phi);
                if (observer) observer(n + 1, t + h, phi);
                continue;
            }
            auto pl = plan(p, t, h, phi.ledger);
            auto& fs = pl.factors;
            apply_factor(pending ? merge_factors(*pending, fs.front()) : fs.front(), m_, phi);
            for (std::size_t k = 1; k + 1 < fs.size(); ++k) apply_factor(fs[k], m_, phi);
            pending = fs.back();
        } catch (const StepFailure&) {
            throw;
        } catch (const NumericalError& e) {
            throw StepFailure(e.what(), t, n);
        }
    }
    if (pending) apply_factor(*pending, m_, phi);
}

std::string MagnusScheme::metadata() const
{
    std::ostringstream os;
    os << "method=" << name() << " order=" << order() << " rule=" << rule_.name << " exp_order=" << m_;
    return os.str();
}

namespace {

Factor shear(Matrix b) { return {FactorKind::shear, 0, std::move(b)}; }
Factor harmonic(double a, Matrix b) { return {FactorKind::harmonic, a, std::move(b)}; }
Factor lambda(Matrix w) { return {FactorKind::lambda, 0, std::move(w)}; }

// lower block of [alpha_2, [alpha_1, alpha_2]]
Matrix bracket212(const GradedGenerators& g, CostLedger& ledger) { return 2 * g.h * mul_counted(g.q, g.q, ledger); }
Matrix bracket313(const GradedGenerators& g, CostLedger& ledger) { return 2 * g.h * mul_counted(g.r, g.r, ledger); }

}

const std::array<double, 6>& Phi1Order6::coefficients()
{
    static const std::array<double, 6> x{1.0, 1.0 / 20, 1.0 / 12, 1.0 / 60, -1.0 / 2880, 1.0 / 1440};
    return x;
}

StepPlan Phi1Order6::plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const
{
    const auto& x = coefficients();
    double h = g.h;
    Matrix b212 = bracket212(g, ledger);
    Matrix qp = mul_counted(g.q, g.p, ledger);
    // symmetric blocks: P Q = (Q P)^T
    Matrix w = h * h * (3 * qp + qp.transpose());
    Matrix even = x[3] * g.r + x[4] * b212;
    StepPlan pl;
    pl.factors.push_back(lambda(x[5] * w));
    pl.factors.push_back(shear(-x[2] * g.q + even));
    pl.factors.push_back(harmonic(x[0] * h, x[0] * g.p + x[1] * g.r));
    pl.factors.push_back(shear(x[2] * g.q + even));
    pl.factors.push_back(lambda(x[5] * w));
    return pl;
}

const std::array<double, 6>& Phi2Order6::coefficients()
{
    static const std::array<double, 6> x{1.0 / 60, 1.0 / 60, 1.0 / 43200, 0.5, 2.0 / 15, 1.0 / 40};
    return x;
}

StepPlan Phi2Order6::plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const
{
    const auto& x = coefficients();
    double h = g.h;
    Matrix b212 = bracket212(g, ledger);
    Matrix even = x[1] * g.r + x[2] * b212;
    Matrix inner = x[3] * g.p + x[5] * g.r;
    StepPlan pl;
    pl.factors.push_back(shear(-x[0] * g.q + even));
    pl.factors.push_back(harmonic(x[3] * h, inner - x[4] * g.q));
    pl.factors.push_back(harmonic(x[3] * h, inner + x[4] * g.q));
    pl.factors.push_back(shear(x[0] * g.q + even));
    return pl;
}

const std::array<double, 6>& Phi3Order6::coefficients()
{
    static const double s5 = std::sqrt(5.0);
    static const std::array<double, 6> x{(5 - s5) / 10, (5 - s5) / 24, (5 - s5) / 60,
                                         1 / s5,         (-5 + 2 * s5) / 60, (-11 + 5 * s5) / 8640};
    return x;
}

StepPlan Phi3Order6::plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const
{
    const auto& x = coefficients();
    double h = g.h;
    Matrix b212 = bracket212(g, ledger);
    Matrix outer = x[0] * g.p + x[2] * g.r;
    StepPlan pl;
    pl.factors.push_back(harmonic(x[0] * h, outer - x[1] * g.q));
    pl.factors.push_back(harmonic(x[3] * h, x[3] * g.p + x[4] * g.r + x[5] * b212));
    pl.factors.push_back(harmonic(x[0] * h, outer + x[1] * g.q));
    return pl;
}

const std::array<double, 16>& Phi5Order8::printed_coefficients()
{
    static const std::array<double, 16> x{
        0.6403363286379515,  0.0433501199827269,  -0.4017895263297271, -0.1170180583697493,
        -0.1038563759039891, -0.0376728349617945, 0.5816213620107513,  0.2609350592183406,
        0.1157777422250884,  0.0506748377294480,  -0.0000936846387697, -0.0127292796833454,
        0.0080702403542039,  -0.0017487133111753, -0.0000928250351798, 0.0001835812673590};
    return x;
}

Phi5Order8::Phi5Order8(int m, QuadratureRule rule) : Phi5Order8(printed_coefficients(), m, std::move(rule)) {}

Phi5Order8::Phi5Order8(std::array<double, 16> x, int m, QuadratureRule rule)
    : MagnusScheme(std::move(rule), m), x_(x)
{
    if (rule_.order < 8) throw ConfigError("phi5_8: needs a quadrature rule of order 8");
}

StepPlan Phi5Order8::plan_from_generators(const GradedGenerators& g, CostLedger& ledger) const
{
    if (!g.has_s) throw ConfigError("phi5_8: generators lack the fourth block");
    auto x = [this](int i) { return x_[i - 1]; };
    double h = g.h;
    Matrix b212 = bracket212(g, ledger);
    Matrix b313 = bracket313(g, ledger);

    Matrix e7 = x(7) * g.p + x(9) * g.r + x(11) * b212;
    Matrix o7 = x(8) * g.q + x(10) * g.s;
    Matrix es = x(13) * g.r + x(15) * b212 + x(16) * b313;
    Matrix os = x(12) * g.q + x(14) * g.s;
    Matrix e3 = x(3) * g.p + x(5) * g.r;
    Matrix o3 = x(4) * g.q + x(6) * g.s;

    StepPlan pl;
    pl.factors.push_back(harmonic(x(7) * h, e7 - o7));
    pl.factors.push_back(shear(es - os));
    pl.factors.push_back(harmonic(x(3) * h, e3 - o3));
    pl.factors.push_back(harmonic(x(1) * h, x(1) * g.p + x(2) * g.r));
    pl.factors.push_back(harmonic(x(3) * h, e3 + o3));
    pl.factors.push_back(shear(es + os));
    pl.factors.push_back(harmonic(x(7) * h, e7 + o7));
    return pl;
}

CommutatorFreeScheme::CommutatorFreeScheme(std::vector<std::vector<double>> rows, int order, int m)
    : MagnusScheme(order > 6 ? gl8() : gl6(), m), rows_(std::move(rows)), order_(order)
{
    if (rows_.empty()) throw ConfigError("cf: table has no rows");
    for (auto& row : rows_) {
        if (row.empty() || row.size() > 4) throw ConfigError("cf: each row needs 1 to 4 coefficients");
        if (row.size() == 4 && order_ <= 6) throw ConfigError("cf: a fourth generator needs order > 6");
        row.resize(4, 0.0);
    }
    if (order_ < 1 || order_ > 8) throw ConfigError("cf: order must be in 1..8");
}

StepPlan CommutatorFreeScheme::plan_from_generators(const GradedGenerators& g, CostLedger&) const
{
    StepPlan pl;
    for (const auto& x : rows_) {
        Matrix b = x[0] * g.p + x[1] * g.q + x[2] * g.r;
        if (x[3] != 0) b += x[3] * g.s;
        if (x[0] != 0)
            pl.factors.push_back(harmonic(x[0] * g.h, std::move(b)));
        else
            pl.factors.push_back(shear(std::move(b)));
    }
    return pl;
}

void step_phi1_6(const HillProblem& p, double t, double h, BlockPropagator& phi) { Phi1Order6().step(p, t, h, phi); }
void step_phi2_6(const HillProblem& p, double t, double h, BlockPropagator& phi) { Phi2Order6().step(p, t, h, phi); }
void step_phi3_6(const HillProblem& p, double t, double h, BlockPropagator& phi) { Phi3Order6().step(p, t, h, phi); }
void step_phi5_8(const HillProblem& p, double t, double h, BlockPropagator& phi) { Phi5Order8().step(p, t, h, phi); }

void step_cf(const HillProblem& p, double t, double h, BlockPropagator& phi, const std::vector<std::vector<double>>& table)
{
    int order = 6;
    for (const auto& row : table)
        if (row.size() == 4) order = 8;
    CommutatorFreeScheme(table, order).step(p, t, h, phi);
}

Phi2Blocks phi2_blocks(const Matrix& m1, const Matrix& m2, const Matrix& m3, double h)
{
    double s15 = std::sqrt(15.0);
    Matrix k = m1 - m3;
    Matrix l = -m1 + 2 * m2 - m3;
    Matrix f = h * h * k * k;
    Phi2Blocks b;
    Matrix c_even = l / 18 + f / 12960;
    b.c1 = -(s15 / 180) * k + c_even;
    b.c2 = (s15 / 180) * k + c_even;
    Matrix d_even = -m2 + l / 6;
    b.d1 = d_even - (4 / (3 * s15)) * k;
    b.d2 = d_even + (4 / (3 * s15)) * k;
    return b;
}

}

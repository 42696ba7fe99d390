#include "symphill/baselines.hpp"
#include "symphill/errors.hpp"
#include "symphill/sympexp.hpp"

#include <cmath>
#include <sstream>

namespace symphill {

ButcherTableau make_tableau(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> c, int order)
{
    std::size_t s = b.size();
    if (s == 0 || a.size() != s) throw ConfigError("butcher tableau: a must be s x s with s = len(b)");
    bool expl = true;
    for (std::size_t i = 0; i < s; ++i) {
        if (a[i].size() < s) a[i].resize(s, 0.0);
        if (a[i].size() != s) throw ConfigError("butcher tableau: row length exceeds stage count");
        for (std::size_t j = i; j < s; ++j)
            if (a[i][j] != 0) expl = false;
    }
    double sb = 0;
    for (double v : b) sb += v;
    if (std::abs(sb - 1) > 1e-14) throw ConfigError("butcher tableau: weights must sum to one");
    if (c.empty()) {
        for (std::size_t i = 0; i < s; ++i) {
            double r = 0;
            for (double v : a[i]) r += v;
            c.push_back(r);
        }
    } else {
        if (c.size() != s) throw ConfigError("butcher tableau: c has wrong length");
        for (std::size_t i = 0; i < s; ++i) {
            double r = 0;
            for (double v : a[i]) r += v;
            if (std::abs(r - c[i]) > 1e-14) throw ConfigError("butcher tableau: row sums must equal c");
        }
    }
    ButcherTableau t;
    t.a = std::move(a);
    t.b = std::move(b);
    t.c = std::move(c);
    t.order = order;
    t.explicit_method = expl;
    return t;
}

ButcherTableau gauss_legendre6()
{
    double s15 = std::sqrt(15.0);
    std::vector<std::vector<double>> a{{5.0 / 36, 2.0 / 9 - s15 / 15, 5.0 / 36 - s15 / 30},
                                       {5.0 / 36 + s15 / 24, 2.0 / 9, 5.0 / 36 - s15 / 24},
                                       {5.0 / 36 + s15 / 30, 2.0 / 9 + s15 / 15, 5.0 / 36}};
    ButcherTableau t;
    t.a = a;
    t.b = {5.0 / 18, 4.0 / 9, 5.0 / 18};
    t.c = {0.5 - s15 / 10, 0.5, 0.5 + s15 / 10};
    t.order = 6;
    t.explicit_method = false;
    return t;
}

ButcherTableau classical_rk4()
{
    return make_tableau({{0, 0, 0, 0}, {0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 1, 0}},
                        {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6}, {}, 4);
}

SplittingTable make_splitting(std::vector<double> a, std::vector<double> b, int order)
{
    if (a.empty() || a.size() != b.size()) throw ConfigError("splitting table: a and b must have equal length");
    double sa = 0, sb = 0;
    for (double v : a) sa += v;
    for (double v : b) sb += v;
    if (std::abs(sa - 1) > 1e-14 || std::abs(sb - 1) > 1e-14)
        throw ConfigError("splitting table: coefficients must sum to one");
    return {std::move(a), std::move(b), order};
}

SplittingTable leapfrog_table() { return make_splitting({0.5, 0.5}, {1.0, 0.0}, 2); }

RkglStats step_rkgl6(const HillProblem& p, double t, double h, BlockPropagator& phi, double tol, int max_iter)
{
    static const ButcherTableau gl = gauss_legendre6();
    const int s = 3;
    Matrix x = phi.top(), v = phi.bottom();
    Matrix m[s];
    for (int i = 0; i < s; ++i) m[i] = p.evaluator(t + gl.c[i] * h);

    // Nystrom form of the collocation stages, Gauss-Seidel sweep
    Matrix X[s], V[s], F[s];
    for (int i = 0; i < s; ++i) {
        X[i] = x;
        V[i] = v;
    }
    double scale = 1 + norm1(phi.state());
    RkglStats st;
    while (true) {
        if (st.iterations >= max_iter)
            throw ConvergenceError("rkgl6: fixed-point iteration did not converge", st.last_difference, st.iterations);
        ++st.iterations;
        for (int i = 0; i < s; ++i) F[i] = -slab_mul(m[i], X[i], phi.ledger);
        double diff = 0;
        Matrix nv[s];
        for (int i = 0; i < s; ++i) {
            nv[i] = v;
            for (int j = 0; j < s; ++j) nv[i] += (h * gl.a[i][j]) * F[j];
        }
        Matrix nx[s];
        for (int i = 0; i < s; ++i) {
            nx[i] = x;
            for (int j = 0; j < s; ++j) nx[i] += (h * gl.a[i][j]) * nv[j];
            diff = std::max({diff, norm1(nx[i] - X[i]), norm1(nv[i] - V[i])});
        }
        for (int i = 0; i < s; ++i) {
            X[i] = std::move(nx[i]);
            V[i] = std::move(nv[i]);
        }
        st.last_difference = diff;
        if (!std::isfinite(diff))
            throw ConvergenceError("rkgl6: fixed-point iteration diverged", diff, st.iterations);
        if (diff <= tol * scale) break;
    }
    Matrix nx = x, nvv = v;
    for (int i = 0; i < s; ++i) {
        nx += (h * gl.b[i]) * V[i];
        nvv += (h * gl.b[i]) * F[i];
    }
    phi.top() = nx;
    phi.bottom() = nvv;
    return st;
}

namespace {

void kick(const HillProblem& p, double tau, double coef, double h, BlockPropagator& phi)
{
    if (coef == 0) return;
    exp_shear_apply(p.evaluator(tau), -coef * h, phi);
}

}

void step_splitting(const HillProblem& p, double t, double h, BlockPropagator& phi, const SplittingTable& table)
{
    double tau = t;
    for (int k = 0; k < table.stages(); ++k) {
        drift_apply(table.a[k] * h, phi);
        tau += table.a[k] * h;
        kick(p, tau, table.b[k], h, phi);
    }
}

void step_explicit_rk(const FirstOrderSystem& sys, double t, double h, Matrix& phi, const ButcherTableau& tab,
                      CostLedger& ledger)
{
    if (!tab.explicit_method) throw ConfigError("step_explicit_rk: tableau is not explicit");
    int s = tab.stages();
    std::vector<Matrix> k(s);
    std::vector<bool> used(s, false);
    for (int j = 0; j < s; ++j) {
        used[j] = tab.b[j] != 0;
        for (int i = j + 1; i < s; ++i)
            if (tab.a[i][j] != 0) used[j] = true;
    }
    for (int i = 0; i < s; ++i) {
        if (!used[i]) continue;
        Matrix y = phi;
        for (int j = 0; j < i; ++j)
            if (tab.a[i][j] != 0) y += (h * tab.a[i][j]) * k[j];
        k[i] = apply_first_order(sys, t + tab.c[i] * h, y, ledger);
    }
    for (int i = 0; i < s; ++i)
        if (tab.b[i] != 0) phi += (h * tab.b[i]) * k[i];
}

std::vector<int> RkglMethod::integrate_counted(const HillProblem& p, double t0, double h, long steps,
                                               BlockPropagator& phi, const StepObserver& observer) const
{
    if (phi.half_dim() != p.dim) throw DimensionError("rkgl6: propagator and problem dimensions differ");
    std::vector<int> its;
    for (long n = 0; n < steps; ++n) {
        double t = t0 + n * h;
        try {
            its.push_back(step_rkgl6(p, t, h, phi, tol_, max_iter_).iterations);
        } catch (const NumericalError& e) {
            throw StepFailure(e.what(), t, n);
        }
        if (observer) observer(n + 1, t + h, phi);
    }
    return its;
}

void RkglMethod::integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                           const StepObserver& observer) const
{
    integrate_counted(p, t0, h, steps, phi, observer);
}

std::string RkglMethod::metadata() const
{
    std::ostringstream os;
    os << "method=rkgl6 tol=" << tol_ << " max_iter=" << max_iter_;
    return os.str();
}

void SplittingMethod::integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                                const StepObserver& observer) const
{
    if (phi.half_dim() != p.dim) throw DimensionError(name_ + ": propagator and problem dimensions differ");
    int s = table_.stages();
    // first kick at t and last kick at t + h merge across steps
    bool fsal = !observer && s > 1 && table_.a[0] == 0 && table_.b[0] != 0 && table_.b[s - 1] != 0;
    if (!fsal) {
        for (long n = 0; n < steps; ++n) {
            step_splitting(p, t0 + n * h, h, phi, table_);
            if (observer) observer(n + 1, t0 + (n + 1) * h, phi);
        }
        return;
    }
    double pending = 0;
    for (long n = 0; n < steps; ++n) {
        double t = t0 + n * h, tau = t;
        kick(p, t, table_.b[0] + pending, h, phi);
        for (int k = 1; k < s; ++k) {
            drift_apply(table_.a[k] * h, phi);
            tau += table_.a[k] * h;
            if (k + 1 < s) kick(p, tau, table_.b[k], h, phi);
        }
        pending = table_.b[s - 1];
    }
    if (steps > 0) kick(p, t0 + steps * h, pending, h, phi);
}

ExplicitRkMethod::ExplicitRkMethod(ButcherTableau tab, std::string name) : tab_(std::move(tab)), name_(std::move(name))
{
    if (!tab_.explicit_method) throw ConfigError(name_ + ": tableau is not explicit");
}

void ExplicitRkMethod::integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                                 const StepObserver& observer) const
{
    if (phi.half_dim() != p.dim) throw DimensionError(name_ + ": propagator and problem dimensions differ");
    auto sys = to_first_order(p, false);
    for (long n = 0; n < steps; ++n) {
        step_explicit_rk(sys, t0 + n * h, h, phi.state(), tab_, phi.ledger);
        if (observer) observer(n + 1, t0 + (n + 1) * h, phi);
    }
}

}

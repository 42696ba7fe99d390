#include "support.hpp"
#include "symphill/coefficients.hpp"
#include "symphill/errors.hpp"
#include "symphill/magnus.hpp"

#include <doctest.h>
#include <cmath>
#include <memory>

using namespace symphill;

static Matrix hill_block(const Matrix& m)
{
    auto r = m.rows();
    return oracle::block(Matrix::Zero(r, r), Matrix::Identity(r, r), -m, Matrix::Zero(r, r));
}

static std::vector<std::unique_ptr<MagnusScheme>> schemes()
{
    std::vector<std::unique_ptr<MagnusScheme>> v;
    v.push_back(std::make_unique<Phi1Order6>());
    v.push_back(std::make_unique<Phi2Order6>());
    v.push_back(std::make_unique<Phi3Order6>());
    v.push_back(std::make_unique<Phi5Order8>());
    return v;
}

static Matrix run(const Method& m, const HillProblem& p, double t0, double h, long n, CostLedger* l = nullptr)
{
    BlockPropagator phi(p.dim);
    m.integrate(p, t0, h, n, phi);
    if (l) *l = phi.ledger;
    return phi.state();
}

TEST_CASE("autonomous problems are solved up to exponential truncation")
{
    Matrix m = pascal_matrix(3) + Matrix::Identity(3, 3);
    HillProblem p{"const", 3, 1.0, [m](double) { return m; }, true, {}};
    double h = 0.1;
    Matrix ex = oracle::expm(h * hill_block(m));
    for (auto& s : schemes()) {
        BlockPropagator phi(3);
        s->step(p, 0.2, h, phi);
        CHECK_MESSAGE((phi.state() - ex).cwiseAbs().maxCoeff() < 1e-12, s->name());
    }
}

TEST_CASE("unmodulated Mathieu monodromy is exact up to exponential truncation")
{
    auto p = mathieu(5, 0);
    Matrix rot(2, 2);
    rot << std::cos(5 * M_PI), std::sin(5 * M_PI) / 5, -5 * std::sin(5 * M_PI), std::cos(5 * M_PI);
    std::vector<std::unique_ptr<MagnusScheme>> fine;
    fine.push_back(std::make_unique<Phi1Order6>(10));
    fine.push_back(std::make_unique<Phi2Order6>(10));
    fine.push_back(std::make_unique<Phi3Order6>(10));
    fine.push_back(std::make_unique<Phi5Order8>(10));
    double w = 5, h = M_PI / 10;
    for (auto& s : schemes()) {
        double e = norm1(run(*s, p, 0, h, 10) - rot);
        // first omitted series terms of every harmonic factor
        CostLedger l;
        auto pl = s->plan(p, 0, h, l);
        double bound = 0;
        for (const auto& f : pl.factors) {
            if (f.kind != FactorKind::harmonic) continue;
            double z = w * std::abs(f.a), term = 1;
            for (int k = 1; k <= 13; ++k) term *= z / k;
            bound += (w + 1 + 1 / w) * term;
        }
        bound *= 10;
        MESSAGE(s->name() << " m=5 error " << e << " truncation estimate " << bound);
        CHECK(e <= 2 * bound);
    }
    for (auto& s : fine) CHECK_MESSAGE(norm1(run(*s, p, 0, M_PI / 10, 10) - rot) <= 1e-12, s->name());

    BlockPropagator phi(1);
    Phi2Order6().integrate(p, 0, 0.1, 0, phi);
    CHECK(phi.state() == Matrix::Identity(2, 2));
}

TEST_CASE("steady-state and boundary costs")
{
    auto p = pascal_hill(3, 1);
    struct Case {
        std::unique_ptr<MagnusScheme> s;
        std::int64_t per_step, extra;
    };
    std::vector<Case> cases;
    cases.push_back({std::make_unique<Phi1Order6>(), 83, 19});
    cases.push_back({std::make_unique<Phi2Order6>(), 101, 6});
    cases.push_back({std::make_unique<Phi3Order6>(), 141, 0});
    cases.push_back({std::make_unique<Phi5Order8>(), 248, 0});
    for (auto& c : cases) {
        for (long n : {1, 2, 7}) {
            CostLedger l;
            run(*c.s, p, 0, 0.05, n, &l);
            CHECK_MESSAGE(l.thirds() == c.per_step * n + c.extra, c.s->name());
        }
    }
    CHECK(thirds_to_string(83) == "27+2/3");
    CHECK(thirds_to_string(101) == "33+2/3");
    CHECK(thirds_to_string(248) == "82+2/3");
}

TEST_CASE("commutator-free cost and structure")
{
    std::vector<std::vector<double>> five(5, {0.2, 0.0, 0.0});
    CommutatorFreeScheme cf(five, 2);
    auto p = pascal_hill(2, 1);
    CostLedger l;
    run(cf, p, 0, 0.05, 3, &l);
    CHECK(l.thirds() == 3 * 230);
    CHECK(thirds_to_string(230) == "76+2/3");

    CommutatorFreeScheme one({{1.0}}, 2);
    CommutatorFreeScheme neg({{1.2, 0.1}, {-0.2, 0.1}}, 2);
    auto q = mathieu(5, 1);
    Matrix ref = run(Phi2Order6(), q, 0, M_PI / 400, 400);
    for (const MagnusScheme* s : {static_cast<const MagnusScheme*>(&one), static_cast<const MagnusScheme*>(&neg)}) {
        std::vector<double> hs, errs;
        for (long n : {40, 80, 160}) {
            hs.push_back(M_PI / n);
            errs.push_back(norm1(run(*s, q, 0, M_PI / n, n) - ref));
        }
        CHECK(oracle::slope(hs, errs) >= 1.8);
    }

    CHECK_THROWS_AS(CommutatorFreeScheme({}, 2), ConfigError);
    CHECK_THROWS_AS(CommutatorFreeScheme({{1, 0, 0, 0.1}}, 6), ConfigError);

    std::vector<std::vector<double>> shear_row{{0.0, 0.1}, {1.0}};
    CommutatorFreeScheme with_shear(shear_row, 2);
    CostLedger l2;
    run(with_shear, p, 0, 0.05, 1, &l2);
    CHECK(l2.thirds() == 6 + 46);
}

TEST_CASE("cf4 data file reaches fourth order")
{
    auto f = load_coefficients(std::string(SYMPHILL_DATA_DIR) + "/cf4.json");
    auto m = method_from_coefficients(f);
    auto fit = measure_order(*m, {20, 40, 80, 160});
    CHECK(fit.slope == doctest::Approx(4).epsilon(0.3 / 4));
}

TEST_CASE("[212] and [1112] blocks match dense commutators")
{
    std::mt19937 g(21);
    GradedGenerators gen;
    gen.h = 0.3;
    gen.p = oracle::random_symmetric(3, g);
    gen.q = oracle::random_symmetric(3, g);
    gen.r = oracle::random_symmetric(3, g);
    Matrix z = Matrix::Zero(3, 3), i3 = Matrix::Identity(3, 3);
    Matrix a1 = oracle::block(z, gen.h * i3, gen.p, z), a2 = oracle::block(z, z, gen.q, z);
    auto com = [](const Matrix& a, const Matrix& b) { return Matrix(a * b - b * a); };
    Matrix c212 = com(a2, com(a1, a2));
    Matrix c1112 = com(a1, com(a1, com(a1, a2)));

    CHECK((c212.bottomLeftCorner(3, 3) - 2 * gen.h * gen.q * gen.q).norm() < 1e-13);
    CHECK(c212.topRows(3).norm() < 1e-13);
    CHECK(c212.bottomRightCorner(3, 3).norm() < 1e-13);

    Matrix w = gen.h * gen.h * (3 * gen.q * gen.p + gen.p * gen.q);
    CHECK((c1112.topLeftCorner(3, 3) - w).norm() < 1e-12);
    CHECK((c1112.bottomRightCorner(3, 3) + w.transpose()).norm() < 1e-12);
    CHECK(c1112.topRightCorner(3, 3).norm() < 1e-12);
    CHECK(c1112.bottomLeftCorner(3, 3).norm() < 1e-12);
    CHECK((gen.q * gen.p - (gen.p * gen.q).transpose()).norm() < 1e-14);

    // the plan's lambda factor carries x6 times this block
    CostLedger l;
    auto pl = Phi1Order6().plan_from_generators(gen, l);
    CHECK((pl.factors.front().block - w / 1440).norm() < 1e-15);
    CHECK(l.thirds() == 6);
}

TEST_CASE("two-exponential method written in samples agrees with the generator form")
{
    std::mt19937 g(31);
    for (int k = 0; k < 5; ++k) {
        Matrix m1 = oracle::random_symmetric(3, g), m2 = oracle::random_symmetric(3, g), m3 = oracle::random_symmetric(3, g);
        double h = 0.37;
        auto b = phi2_blocks(m1, m2, m3, h);
        CostLedger l;
        auto pl = Phi2Order6().plan_from_generators(alphas_order6({m1, m2, m3}, h), l);
        REQUIRE(pl.factors.size() == 4);
        CHECK((pl.factors[0].block - h * b.c1).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((pl.factors[3].block - h * b.c2).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(pl.factors[1].a == doctest::Approx(h / 2));
        CHECK((pl.factors[1].block - (h / 2) * b.d1).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((pl.factors[2].block - (h / 2) * b.d2).cwiseAbs().maxCoeff() < 1e-14);
    }
    // autonomous case: C vanish and D = -M
    Matrix m = pascal_matrix(2);
    auto b = phi2_blocks(m, m, m, 0.2);
    CHECK(b.c1.isZero(0));
    CHECK(b.c2.isZero(0));
    CHECK(b.d1 == -m);
    CHECK(b.d2 == -m);
}

TEST_CASE("coefficient consistency")
{
    const auto& x3 = Phi3Order6::coefficients();
    CHECK(std::abs(2 * x3[0] + x3[3] - 1) < 1e-15);
    const auto& x5 = Phi5Order8::printed_coefficients();
    CHECK(x5[0] == 0.6403363286379515);
    CHECK(x5[15] == 0.0001835812673590);
    CHECK(std::abs(2 * x5[2] + x5[0] + 2 * x5[6] - 1) < 1e-12);
    CHECK(Phi1Order6::coefficients()[0] == 1);
    CHECK(Phi2Order6::coefficients()[3] * 2 == 1);
}

static Matrix one_step(const MagnusScheme& s, const HillProblem& p, double t, double h)
{
    BlockPropagator phi(p.dim);
    s.step(p, t, h, phi);
    return phi.state();
}

TEST_CASE("local error order of the sixth-order schemes")
{
    auto p = mathieu(5, 1);
    double t = 0.3;
    for (auto& s : schemes()) {
        if (s->order() != 6) continue;
        std::vector<double> hs, errs;
        for (double h : {M_PI / 20, M_PI / 40, M_PI / 80}) {
            Matrix ref = oracle::reference_fundamental(p.evaluator, 1, t, t + h, 4000);
            hs.push_back(h);
            errs.push_back(norm1(one_step(*s, p, t, h) - ref));
        }
        CHECK_MESSAGE(oracle::slope(hs, errs) == doctest::Approx(7).epsilon(0.3 / 7), s->name());
    }
}

TEST_CASE("time symmetry")
{
    auto p = pascal_hill(3, 2);
    double t = 0.4;
    for (auto& s : schemes()) {
        if (s->order() != 6) continue;
        std::vector<double> errs;
        for (double h : {0.08, 0.04, 0.02}) {
            BlockPropagator phi(3);
            s->step(p, t, h, phi);
            s->step(p, t + h, -h, phi);
            errs.push_back(norm1(phi.state() - Matrix::Identity(6, 6)));
        }
        // the compositions are symmetric, so the defect is round-off
        for (double e : errs) CHECK_MESSAGE(e < 1e-13, s->name());
    }
}

TEST_CASE("replacing quadrature generators by truncated derivatives changes a step at fifth order")
{
    double w = 5, e = 1, t = 0.3;
    auto p = mathieu(w, e);
    Phi2Order6 s;
    std::vector<double> hs, diffs;
    for (double h : {0.1, 0.05, 0.025}) {
        double tm = t + h / 2;
        GradedGenerators ex;
        ex.h = h;
        ex.p = Matrix::Constant(1, 1, -h * (w * w + e * std::cos(2 * tm)));
        ex.q = Matrix::Constant(1, 1, h * h * 2 * e * std::sin(2 * tm));
        ex.r = Matrix::Constant(1, 1, h * h * h * 2 * e * std::cos(2 * tm));
        auto apply = [&](const GradedGenerators& g) {
            BlockPropagator phi(1);
            auto pl = s.plan_from_generators(g, phi.ledger);
            for (const auto& f : pl.factors) apply_factor(f, 5, phi);
            return phi.state();
        };
        hs.push_back(h);
        diffs.push_back(norm1(apply(ex) - apply(generators(p, gl6(), t, h, 6))));
    }
    CHECK(oracle::slope(hs, diffs) == doctest::Approx(5).epsilon(0.06));
}

TEST_CASE("symplecticity over many steps")
{
    for (const auto& p : {mathieu(5, 5), pascal_hill(5, 5), pascal_hill(7, 0.7)}) {
        for (auto& s : schemes()) {
            long n = 40;
            Matrix phi = run(*s, p, 0, M_PI / n, n);
            CHECK_MESSAGE(symplectic_defect(phi) <= 1e-12 * n * std::max(1.0, norm1(phi) * norm1(phi)), s->name());
        }
    }
}

TEST_CASE("refit eighth-order coefficients reach order eight")
{
    auto f = load_coefficients(std::string(SYMPHILL_DATA_DIR) + "/phi5_8_refit.json");
    auto m = method_from_coefficients(f);
    auto fit = measure_order(*m, {10, 20, 40});
    MESSAGE("refit slope " << fit.slope);
    CHECK(fit.slope == doctest::Approx(8).epsilon(0.5 / 8));
}

TEST_CASE("two-exponential scheme beats the three-exponential one at equal cost")
{
    auto p = mathieu(5, 1);
    Matrix ref = run(Phi5Order8(), p, 0, M_PI / 2000, 2000);
    // equal cost: 40 steps at 33 2/3 against 29 steps at 47
    CostLedger l2, l3;
    double e2 = norm1(run(Phi2Order6(), p, 0, M_PI / 40, 40, &l2) - ref);
    double e3 = norm1(run(Phi3Order6(), p, 0, M_PI / 29, 29, &l3) - ref);
    MESSAGE("phi2 " << e2 << " phi3 " << e3);
    CHECK(l3.thirds() >= l2.thirds());
    CHECK(e2 < e3);
}

TEST_CASE("preconditions and failures")
{
    HillProblem ns{"ns", 2, 1.0, [](double) { Matrix m(2, 2); m << 1, 2, 0, 1; return m; }, false, {}};
    BlockPropagator phi(2);
    CHECK_THROWS_AS(Phi2Order6().integrate(ns, 0, 0.1, 2, phi), ConfigError);
    BlockPropagator wrong(3);
    CHECK_THROWS_AS(Phi2Order6().integrate(mathieu(1, 1), 0, 0.1, 2, wrong), DimensionError);

    HillProblem bad{"bad", 1, 1.0, [](double t) { return Matrix::Constant(1, 1, t > 0.25 ? std::nan("") : 1.0); }, true, {}};
    BlockPropagator b(1);
    try {
        Phi3Order6().integrate(bad, 0, 0.1, 5, b);
        FAIL("expected a step failure");
    } catch (const StepFailure& e) {
        CHECK(e.step_index == 2);
        CHECK(e.t_n == doctest::Approx(0.2));
    }
}

TEST_CASE("observer sees every step and matches the amortized result")
{
    auto p = mathieu(3, 2);
    Phi1Order6 s;
    BlockPropagator a(1), b(1);
    long seen = 0;
    s.integrate(p, 0, 0.1, 10, a, [&](long n, double t, const BlockPropagator&) {
        ++seen;
        CHECK(t == doctest::Approx(0.1 * n));
    });
    s.integrate(p, 0, 0.1, 10, b);
    CHECK(seen == 10);
    // merged lambda factors differ from separate ones only at O(h^10) per step
    CHECK(norm1(a.state() - b.state()) < 1e-11);
}

#include "support.hpp"
#include "symphill/baselines.hpp"
#include "symphill/errors.hpp"
#include "symphill/floquet.hpp"
#include "symphill/magnus.hpp"

#include <doctest.h>
#include <cmath>

using namespace symphill;

static Matrix mathieu_reference(double omega, double eps, long steps = 20000)
{
    auto mf = [=](double t) {
        Matrix m(1, 1);
        m(0, 0) = omega * omega + eps * std::cos(2 * t);
        return m;
    };
    return oracle::reference_fundamental(mf, 1, 0, M_PI, steps);
}

TEST_CASE("monodromy of unmodulated Mathieu")
{
    for (const char* name : {"phi1_6", "phi2_6", "phi3_6", "phi5_8", "rk4", "rkgl6"}) {
        auto m = make_method(name, {.exp_order = 10});
        long n = std::string(name) == "rk4" ? 4000 : 200;
        auto a = monodromy(mathieu(0.5, 0), *m, n / 5);
        CHECK(std::abs(a.state().trace()) < 1e-9);
        auto b = monodromy(mathieu(5, 0), *m, n);
        CHECK(std::abs(b.state().trace() + 2) < 1e-10);
    }
    CHECK_THROWS_AS(monodromy(mathieu(1, 0), *make_method("phi2_6"), 0), ConfigError);
}

TEST_CASE("coarse monodromy matches fine reference")
{
    auto coarse = stability(monodromy(mathieu(5, 5), *make_method("phi2_6"), 10).state());
    auto fine = stability(mathieu_reference(5, 5));
    REQUIRE(coarse.abs_minus_one.size() == 2);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(coarse.abs_minus_one[i] - fine.abs_minus_one[i]) < 1e-6);
}

TEST_CASE("stability classification")
{
    auto id = stability(Matrix::Identity(4, 4));
    CHECK(id.overall == Stability::marginal);
    CHECK(id.pairing_defect == 0);
    for (auto s : id.per_eigenvalue) CHECK(s == Stability::marginal);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 0.5;
    auto u = stability(d);
    CHECK(u.overall == Stability::unstable);
    CHECK(u.pairing_defect == 0);
    CHECK(u.per_eigenvalue[0] == Stability::unstable);
    CHECK(u.per_eigenvalue[1] == Stability::stable);
    CHECK(std::abs(u.det_minus_one) < 1e-15);
    CHECK(to_string(Stability::unstable) == "unstable");

    Matrix shrink = 0.5 * Matrix::Identity(2, 2);
    CHECK(stability(shrink).overall == Stability::stable);
    Matrix near = (1 + 1e-10) * Matrix::Identity(2, 2);
    CHECK(stability(near).overall == Stability::marginal);
    CHECK(stability(near, 1e-12).overall == Stability::unstable);
}

TEST_CASE("log distance is regularized")
{
    CHECK(log_distance(0) == doctest::Approx(-14));
    CHECK(log_distance(1e-3) == doctest::Approx(std::log10(1e-3 + 1e-14)));
    CHECK(std::isfinite(log_distance(-1e-14)) == false);
}

TEST_CASE("resonant monodromy pairs reciprocally")
{
    // locate an unstable grid point with the independent reference
    double omega = -1;
    for (int j = 20; j <= 1020 && omega < 0; j += 10) {
        double w = j / 200.0;
        if (stability(mathieu_reference(w, 5, 4000)).overall == Stability::unstable) omega = w;
    }
    REQUIRE(omega > 0);
    auto rep = stability(monodromy(mathieu(omega, 5), *make_method("phi2_6"), 10).state());
    CHECK(rep.overall == Stability::unstable);
    int above = 0, below = 0;
    for (double d : rep.abs_minus_one) {
        above += d > 0;
        below += d < 0;
    }
    CHECK(above == 1);
    CHECK(below == 1);
    CHECK(std::abs(std::abs(rep.eigenvalues[0] * rep.eigenvalues[1]) - 1) < 1e-8);
    CHECK(rep.pairing_defect < 1e-8);
}

TEST_CASE("symplectic monodromy has unit determinant and paired spectrum")
{
    std::vector<HillProblem> probs{mathieu(5, 5), mathieu(2.3, 1), pascal_hill(3, 1), paul_trap(0, 0.3)};
    for (const auto& p : probs)
        for (const char* name : {"phi1_6", "phi2_6", "phi3_6", "phi5_8"}) {
            auto rep = stability(monodromy(p, *make_method(name), std::lround(p.period / (M_PI / 10))).state());
            CHECK(std::abs(rep.det_minus_one) <= 1e-11);
            CHECK(rep.pairing_defect <= 1e-8);
            CHECK(rep.eigenvalues.size() == static_cast<std::size_t>(2 * p.dim));
        }
}

TEST_CASE("propagate_periods")
{
    CostLedger l;
    std::mt19937 g(3);
    Matrix a = oracle::random_matrix(4, g);
    CHECK(propagate_periods(a, 0, l).isIdentity());
    CHECK(propagate_periods(a, 1, l) == a);
    CHECK(l.thirds() == 0);

    double th = M_PI / 4;
    Matrix rot(2, 2);
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Matrix r4 = propagate_periods(rot, 4, l);
    CHECK(norm1(r4 + Matrix::Identity(2, 2)) < 1e-15);
    CHECK(l.thirds() == 2 * 12);

    CostLedger l2;
    Matrix p7 = propagate_periods(a, 7, l2);
    CHECK(norm1(p7 - a * a * a * a * a * a * a) < 1e-9 * norm1(p7));
    CHECK(l2.thirds() <= 2 * 3 * 12);
    CHECK_THROWS_AS(propagate_periods(a, -1, l2), ConfigError);
}

TEST_CASE("non-symplectic baseline drifts off the unit circle at order p")
{
    auto p = mathieu(5, 1);
    REQUIRE(stability(mathieu_reference(5, 1)).overall != Stability::unstable);
    ExplicitRkMethod rk(classical_rk4(), "rk4");
    std::vector<double> hs, dev;
    for (long n : {20, 40, 80, 160}) {
        auto rep = stability(monodromy(p, rk, n).state());
        double d = 0;
        for (double x : rep.abs_minus_one) d = std::max(d, std::abs(x));
        hs.push_back(M_PI / n);
        dev.push_back(d);
    }
    double s = oracle::slope(hs, dev);
    CHECK(s >= 4 - 0.3);
    CHECK(s <= 5 + 0.3);

    auto sym = stability(monodromy(p, *make_method("phi2_6"), 20).state());
    CHECK(std::abs(sym.abs_minus_one[0]) < 1e-12);
}

TEST_CASE("powers of a marginal symplectic monodromy stay bounded")
{
    Matrix phi = monodromy(mathieu(5, 1), *make_method("phi2_6"), 20).state();
    auto rep = stability(phi);
    REQUIRE(rep.overall == Stability::marginal);
    Matrix pw = Matrix::Identity(2, 2);
    double early = 0, late = 0;
    for (int n = 1; n <= 10000; ++n) {
        pw = phi * pw;
        double v = norm1(pw);
        if (n <= 100) early = std::max(early, v);
        late = std::max(late, v);
    }
    CHECK(late <= 100 * early);
}

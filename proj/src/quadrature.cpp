#include "symphill/quadrature.hpp"
#include "symphill/errors.hpp"

#include <cmath>

namespace symphill {

QuadratureRule make_rule(std::string name, std::vector<double> nodes, std::vector<double> weights, int order)
{
    if (nodes.empty() || nodes.size() != weights.size())
        throw ConfigError("quadrature rule: nodes and weights must be non-empty and of equal length");
    double sum = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i] > 0 && nodes[i] < 1)) throw ConfigError("quadrature rule: nodes must lie in (0,1)");
        if (i > 0 && !(nodes[i] > nodes[i - 1])) throw ConfigError("quadrature rule: nodes must increase");
        sum += weights[i];
    }
    if (std::abs(sum - 1) > 1e-14) throw ConfigError("quadrature rule: weights must sum to one");
    if (order < 6) throw ConfigError("quadrature rule: order must be at least 6");
    return {std::move(name), std::move(nodes), std::move(weights), order};
}

QuadratureRule gl6()
{
    double d = std::sqrt(15.0) / 10;
    return make_rule("gl6", {0.5 - d, 0.5, 0.5 + d}, {5.0 / 18, 4.0 / 9, 5.0 / 18}, 6);
}

QuadratureRule gl8()
{
    double v1 = 0.5 * std::sqrt((3 + 2 * std::sqrt(6.0 / 5)) / 7);
    double v2 = 0.5 * std::sqrt((3 - 2 * std::sqrt(6.0 / 5)) / 7);
    double w1 = 0.5 - std::sqrt(5.0 / 6) / 6;
    double w2 = 0.5 + std::sqrt(5.0 / 6) / 6;
    return make_rule("gl8", {0.5 - v1, 0.5 - v2, 0.5 + v2, 0.5 + v1}, {w1 / 2, w2 / 2, w2 / 2, w1 / 2}, 8);
}

std::vector<Matrix> momentum_integrals(const std::vector<Matrix>& samples, const QuadratureRule& rule,
                                       double h, int imax)
{
    if (samples.size() != rule.size()) throw DimensionError("momentum_integrals: sample count differs from rule");
    if (imax < 0 || imax > 3) throw DimensionError("momentum_integrals: imax must be in 0..3");
    std::vector<Matrix> out;
    for (int i = 0; i <= imax; ++i) {
        Matrix acc = Matrix::Zero(samples[0].rows(), samples[0].cols());
        for (std::size_t j = 0; j < samples.size(); ++j)
            acc += (h * rule.weights[j] * std::pow(rule.nodes[j] - 0.5, i)) * samples[j];
        out.push_back(std::move(acc));
    }
    return out;
}

GradedGenerators alphas_order6(const std::vector<Matrix>& m, double h)
{
    if (m.size() != 3) throw DimensionError("alphas_order6: need three samples");
    double s15 = std::sqrt(15.0);
    GradedGenerators g;
    g.h = h;
    g.p = -h * m[1];
    g.q = (-(s15 / 3) * h) * (m[2] - m[0]);
    g.r = (-(10.0 / 3) * h) * (m[2] - 2 * m[1] + m[0]);
    g.substitution = "gl6-closed-form";
    return g;
}

GradedGenerators alphas_from_moments6(const std::vector<Matrix>& a, double h)
{
    if (a.size() < 3) throw DimensionError("alphas_from_moments6: need moments 0..2");
    GradedGenerators g;
    g.h = h;
    g.p = 9.0 / 4 * a[0] - 15 * a[2];
    g.q = 12 * a[1];
    g.r = -15 * a[0] + 180 * a[2];
    g.substitution = "moments-order6";
    return g;
}

GradedGenerators alphas_order8(const std::vector<Matrix>& a, double h)
{
    if (a.size() < 4) throw DimensionError("alphas_order8: need moments 0..3");
    GradedGenerators g;
    g.h = h;
    g.p = 0.75 * (3 * a[0] - 20 * a[2]);
    g.q = 15 * (5 * a[1] - 28 * a[3]);
    g.r = -15 * (a[0] - 12 * a[2]);
    g.s = -140 * (3 * a[1] - 20 * a[3]);
    g.has_s = true;
    g.substitution = "moments-order8";
    return g;
}

std::vector<Matrix> sample_problem(const HillProblem& p, const QuadratureRule& rule, double t, double h)
{
    std::vector<Matrix> out;
    out.reserve(rule.size());
    for (double c : rule.nodes) out.push_back(p.evaluator(t + c * h));
    return out;
}

GradedGenerators generators(const HillProblem& p, const QuadratureRule& rule, double t, double h, int order)
{
    if (rule.order < order) throw ConfigError("quadrature rule order is below the method order");
    auto m = sample_problem(p, rule, t, h);
    if (order <= 6 && rule.name == "gl6") return alphas_order6(m, h);
    for (auto& x : m) x = -x;
    if (order <= 6) {
        auto g = alphas_from_moments6(momentum_integrals(m, rule, h, 2), h);
        g.substitution += "/" + rule.name;
        return g;
    }
    auto g = alphas_order8(momentum_integrals(m, rule, h, 3), h);
    g.substitution += "/" + rule.name;
    return g;
}

}

#pragma once

#include "symphill/matrix.hpp"
#include "symphill/problem.hpp"

#include <string>
#include <vector>

namespace symphill {

struct QuadratureRule {
    std::string name;
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;

    std::size_t size() const { return nodes.size(); }
};

QuadratureRule gl6();
QuadratureRule gl8();
QuadratureRule make_rule(std::string name, std::vector<double> nodes, std::vector<double> weights, int order);

// samples are the lower blocks A_j = -M(t + c_j h)
std::vector<Matrix> momentum_integrals(const std::vector<Matrix>& samples, const QuadratureRule& rule,
                                       double h, int imax);

// Lower-left blocks of the generators, carrying their powers of h.
// alpha_1 = [[0, hI], [p, 0]], alpha_k = [[0, 0], [lower_k, 0]] for k >= 2.
struct GradedGenerators {
    double h = 0;
    Matrix p, q, r, s;
    bool has_s = false;
    std::string substitution;
};

GradedGenerators alphas_order6(const std::vector<Matrix>& m_samples, double h);
GradedGenerators alphas_from_moments6(const std::vector<Matrix>& moments, double h);
GradedGenerators alphas_order8(const std::vector<Matrix>& moments, double h);

std::vector<Matrix> sample_problem(const HillProblem& p, const QuadratureRule& rule, double t, double h);

// picks the closed form for GL6 and the moment path otherwise
GradedGenerators generators(const HillProblem& p, const QuadratureRule& rule, double t, double h, int order);

}

#pragma once

#include "symphill/matrix.hpp"
#include "symphill/problem.hpp"
#include "symphill/quadrature.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symphill {

using StepObserver = std::function<void(long step, double t, const BlockPropagator&)>;

class Method {
public:
    virtual ~Method() = default;
    virtual std::string name() const = 0;
    virtual int order() const = 0;
    // Advances phi by `steps` steps of size h starting at t0. With an observer the
    // state is reported after every step and end-merging between steps is disabled.
    virtual void integrate(const HillProblem& p, double t0, double h, long steps, BlockPropagator& phi,
                           const StepObserver& observer = {}) const = 0;
    virtual std::string metadata() const { return "method=" + name(); }
};

struct MethodOptions {
    std::string coeff_file;
    int exp_order = 5;
    double tol = 100 * std::numeric_limits<double>::epsilon();
    int max_iter = 20;
    std::optional<QuadratureRule> rule;
};

std::unique_ptr<Method> make_method(const std::string& name, const MethodOptions& opts = {});
std::vector<std::string> method_names();

long step_count(double t0, double t1, double h);

}

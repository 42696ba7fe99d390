#include "symphill/method.hpp"
#include "symphill/baselines.hpp"
#include "symphill/coefficients.hpp"
#include "symphill/errors.hpp"
#include "symphill/magnus.hpp"

#include <cmath>

namespace symphill {

long step_count(double t0, double t1, double h)
{
    if (!(h > 0)) throw ConfigError("step size must be positive");
    double q = (t1 - t0) / h;
    if (!std::isfinite(q) || q < -1e-6) throw ConfigError("integration interval must be non-negative");
    double n = std::round(q);
    if (std::abs(q - n) > 1e-6) throw ConfigError("interval length is not an integer multiple of the step");
    return static_cast<long>(n);
}

std::vector<std::string> method_names()
{
    return {"phi1_6", "phi2_6", "phi3_6", "phi5_8", "cf", "rkgl6", "splitting", "rk", "rk4", "leapfrog"};
}

std::unique_ptr<Method> make_method(const std::string& name, const MethodOptions& o)
{
    auto rule6 = o.rule ? *o.rule : gl6();
    auto with_file = [&](const char* type) {
        if (o.coeff_file.empty()) throw ConfigError("method '" + name + "' needs --coeff-file");
        auto f = load_coefficients(o.coeff_file);
        if (f.type != type)
            throw ConfigError("method '" + name + "' expects a '" + type + "' coefficient file, got '" + f.type + "'");
        return method_from_coefficients(f, o.exp_order);
    };
    if (name == "phi1_6") return std::make_unique<Phi1Order6>(o.exp_order, rule6);
    if (name == "phi2_6") return std::make_unique<Phi2Order6>(o.exp_order, rule6);
    if (name == "phi3_6") return std::make_unique<Phi3Order6>(o.exp_order, rule6);
    if (name == "phi5_8") {
        if (!o.coeff_file.empty()) return with_file("phi5_8");
        return std::make_unique<Phi5Order8>(o.exp_order, o.rule ? *o.rule : gl8());
    }
    if (name == "cf") return with_file("cf");
    if (name == "splitting") return with_file("splitting");
    if (name == "rk") return with_file("butcher");
    if (name == "rkgl6") return std::make_unique<RkglMethod>(o.tol, o.max_iter);
    if (name == "rk4") return std::make_unique<ExplicitRkMethod>(classical_rk4(), "rk4");
    if (name == "leapfrog") return std::make_unique<SplittingMethod>(leapfrog_table(), "leapfrog");
    throw ConfigError("unknown method '" + name + "'");
}

}

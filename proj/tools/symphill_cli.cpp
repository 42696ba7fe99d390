#include "symphill/cli.hpp"
#include "symphill/errors.hpp"

#include <CLI11.hpp>
#include <iostream>

using namespace symphill;

namespace {

void problem_flags(CLI::App* cmd, ProblemSpec& p)
{
    cmd->add_option("--problem", p.family, "mathieu, pascal, paul_trap, or a JSON problem file path");
    cmd->add_option("--omega", p.omega, "Mathieu frequency");
    cmd->add_option("--eps", p.eps, "modulation amplitude");
    cmd->add_option("--r", p.r, "Pascal problem dimension");
    cmd->add_option("--e0", p.e0, "trap constant field ratio");
    cmd->add_option("--e1", p.e1, "trap oscillating field ratio");
}

void method_flags(CLI::App* cmd, std::string& method, MethodOptions& o)
{
    cmd->add_option("--method", method, "phi1_6, phi2_6, phi3_6, phi5_8, cf, rkgl6, splitting, rk, rk4, leapfrog");
    cmd->add_option("--coeff-file", o.coeff_file, "coefficient file for cf, splitting, rk (or phi5_8)");
    cmd->add_option("--exp-order", o.exp_order, "truncation m of the harmonic exponentials")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", o.tol, "fixed-point tolerance for rkgl6");
}

void resolve(ProblemSpec& p)
{
    if (p.family != "mathieu" && p.family != "pascal" && p.family != "paul_trap") {
        p.file = p.family;
        p.family = "file";
    }
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Symplectic exponential integrators for the matrix Hill equation"};
    app.set_version_flag("--version", std::string(symphill::version));
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    IntegrateSpec is;
    std::optional<double> t_end;
    auto* integ = app.add_subcommand("integrate", "propagate the fundamental matrix or a state vector");
    problem_flags(integ, is.problem);
    method_flags(integ, is.method, is.options);
    integ->add_option("--h", is.h, "step size")->check(CLI::PositiveNumber);
    integ->add_option("--t-end", t_end, "final time (default: one period)");
    integ->add_option("--initial", is.initial, "initial state (2r values); identity when omitted");
    integ->add_option("--out", is.out, "output CSV path (stdout when omitted)");

    MonodromySpec ms;
    auto* mono = app.add_subcommand("monodromy", "monodromy matrix eigenvalues and stability");
    problem_flags(mono, ms.problem);
    method_flags(mono, ms.method, ms.options);
    mono->add_option("--steps-per-period", ms.steps_per_period)->check(CLI::PositiveNumber);
    mono->add_option("--tol-classify", ms.tol_classify);
    mono->add_option("--out", ms.out);

    ScanSpec ss;
    std::optional<double> delta;
    auto* scan = app.add_subcommand("scan", "stability scan over a parameter");
    problem_flags(scan, ss.problem);
    method_flags(scan, ss.method, ss.options);
    scan->add_option("--sweep", ss.sweep, "omega, eps, e0 or e1");
    scan->add_option("--min", ss.min);
    scan->add_option("--max", ss.max);
    scan->add_option("--count", ss.count)->check(CLI::PositiveNumber);
    scan->add_option("--delta", delta, "grid spacing; values are min + j*delta");
    scan->add_option("--steps-per-period", ss.steps_per_period)->check(CLI::PositiveNumber);
    scan->add_option("--tol-classify", ss.tol_classify);
    scan->add_option("--threads", ss.threads)->check(CLI::PositiveNumber);
    scan->add_option("--out", ss.out);

    ConvergeSpec cs;
    auto* conv = app.add_subcommand("converge", "error at one period versus step size");
    problem_flags(conv, cs.problem);
    conv->add_option("--method", cs.methods, "methods to compare (repeatable)");
    conv->add_option("--coeff-file", cs.options.coeff_file);
    conv->add_option("--exp-order", cs.options.exp_order)->check(CLI::PositiveNumber);
    conv->add_option("--tol", cs.options.tol);
    conv->add_option("--steps", cs.steps, "steps per period (repeatable)");
    conv->add_option("--ref-method", cs.ref_method);
    conv->add_option("--ref-steps", cs.ref_steps)->check(CLI::PositiveNumber);
    conv->add_option("--ref-coeff-file", cs.ref_coeff_file, "coefficient file for the reference method");
    conv->add_option("--out", cs.out);

    auto* list = app.add_subcommand("methods", "list registered methods");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*integ) {
            resolve(is.problem);
            is.t_end = t_end;
            run_integrate(is);
        } else if (*mono) {
            resolve(ms.problem);
            run_monodromy(ms);
        } else if (*scan) {
            resolve(ss.problem);
            ss.delta = delta;
            run_scan(ss);
        } else if (*conv) {
            resolve(cs.problem);
            run_converge(cs);
        } else if (*list) {
            for (const auto& n : method_names()) std::cout << n << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

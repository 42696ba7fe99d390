#pragma once

#include "symphill/floquet.hpp"
#include "symphill/method.hpp"
#include "symphill/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symphill {

inline constexpr const char* version = "0.1.0";

struct ProblemSpec {
    std::string family = "mathieu"; // mathieu, pascal, paul_trap, file
    double omega = 5;
    double eps = 1;
    int r = 5;
    double e0 = 1;
    double e1 = 0;
    std::string file;

    std::string describe() const;
};

HillProblem make_problem(const ProblemSpec& spec);
// {"preset": name, "params": {...}} or {"custom": {...}}
HillProblem problem_from_json(const std::string& text);

struct ScanSpec {
    ProblemSpec problem;
    std::string sweep = "omega";
    double min = 0;
    double max = 0;
    long count = 1;
    std::optional<double> delta;
    std::string method = "phi2_6";
    MethodOptions options;
    long steps_per_period = 10;
    double tol_classify = 1e-9;
    int threads = 1;
    std::string out;

    double value(long j) const;
};

struct ScanPoint {
    double value = 0;
    StabilityReport report;
    std::int64_t cost_thirds = 0;
    long uncorrected = 0;
};

std::vector<ScanPoint> compute_scan(const ScanSpec& spec);
std::string scan_csv(const ScanSpec& spec, const std::vector<ScanPoint>& pts);
void run_scan(const ScanSpec& spec);

struct ConvergeSpec {
    ProblemSpec problem;
    std::vector<std::string> methods{"phi2_6"};
    std::vector<long> steps{10, 20, 40, 80, 160};
    std::string ref_method = "phi5_8";
    long ref_steps = 2000;
    std::string ref_coeff_file;
    MethodOptions options;
    std::string out;
};

struct ConvergeRow {
    std::string method;
    long steps = 0;
    double h = 0;
    double error = 0;
    std::int64_t cost_thirds = 0;
};

struct ConvergeResult {
    std::vector<ConvergeRow> rows;
    std::vector<std::pair<std::string, double>> slopes;
};

ConvergeResult compute_converge(const ConvergeSpec& spec);
std::string converge_csv(const ConvergeSpec& spec, const ConvergeResult& res);
void run_converge(const ConvergeSpec& spec);

struct IntegrateSpec {
    ProblemSpec problem;
    std::string method = "phi2_6";
    MethodOptions options;
    double h = 0.1;
    std::optional<double> t_end;
    std::vector<double> initial; // empty: identity (matrix mode)
    std::string out;
};

std::string integrate_output(const IntegrateSpec& spec);
void run_integrate(const IntegrateSpec& spec);

struct MonodromySpec {
    ProblemSpec problem;
    std::string method = "phi2_6";
    MethodOptions options;
    long steps_per_period = 10;
    double tol_classify = 1e-9;
    std::string out;
};

std::string monodromy_output(const MonodromySpec& spec);
void run_monodromy(const MonodromySpec& spec);

// writes to a temporary sibling and renames; empty path writes to stdout
void write_output(const std::string& path, const std::string& content);
std::uint64_t spec_hash(const std::string& text);
std::string format_double(double v);

}

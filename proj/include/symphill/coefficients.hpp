#pragma once

#include "symphill/baselines.hpp"
#include "symphill/magnus.hpp"

#include <memory>
#include <string>
#include <vector>

namespace symphill {

struct CoefficientFile {
    std::string type; // butcher, splitting, cf, phi5_8
    int order = 0;
    ButcherTableau butcher;
    SplittingTable splitting;
    std::vector<std::vector<double>> cf_rows;
    std::array<double, 16> phi5{};
};

// accepts plain numbers and "p/q" strings
double parse_coefficient(const std::string& text);

CoefficientFile load_coefficients(const std::string& path);
CoefficientFile parse_coefficients(const std::string& json_text);

std::unique_ptr<Method> method_from_coefficients(const CoefficientFile& f, int exp_order = 5);

struct OrderFit {
    std::vector<long> steps;
    std::vector<double> errors;
    double slope = 0;
};

// global error at t = pi on Mathieu(5, 1) against a fine reference, with a least-squares slope
OrderFit measure_order(const Method& m, const std::vector<long>& steps = {20, 40, 80, 160});

// throws ConfigError when the measured slope falls short of the declared order by more than 0.5
OrderFit verify_declared_order(const Method& m);

double fit_slope(const std::vector<double>& h, const std::vector<double>& err, double floor = 1e-12);

}

#pragma once

#include <stdexcept>
#include <string>

namespace symphill {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// base class for everything the CLI maps to exit code 3
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
public:
    SingularMatrixError(const std::string& what, double cond)
        : NumericalError(what + " (condition estimate " + std::to_string(cond) + ")"), condition(cond) {}
    double condition;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double res, int iters)
        : NumericalError(what + " (residual " + std::to_string(res) + " after " +
                         std::to_string(iters) + " iterations)"),
          residual(res), iterations(iters) {}
    double residual;
    int iterations;
};

class EigenError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepFailure : public NumericalError {
public:
    StepFailure(const std::string& what, double t, long step)
        : NumericalError("step " + std::to_string(step) + " at t=" + std::to_string(t) + ": " + what),
          t_n(t), step_index(step) {}
    double t_n;
    long step_index;
};

}

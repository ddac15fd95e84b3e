#pragma once

#include <stdexcept>
#include <string>

namespace hypspec {

/// Bad configuration or invalid input data (unknown labels, non-unimodular
/// generators, malformed words, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Floating-point trouble: loss of validity region, non-real eigenpairs,
/// inconsistent dual routes beyond tolerance.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solver did not reach its tolerance.
struct ConvergenceError : std::runtime_error {
    double last_residual = 0.0;
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), last_residual(residual) {}
};

/// Curvature failed a negativity requirement; carries the offending point.
struct CurvatureSignError : std::runtime_error {
    double x = 0.0, y = 0.0, curvature = 0.0;
    CurvatureSignError(const std::string& msg, double px, double py, double k)
        : std::runtime_error(msg), x(px), y(py), curvature(k) {}
};

/// Operation requested beyond the declared differentiation depth.
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Caller broke a documented precondition.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace hypspec

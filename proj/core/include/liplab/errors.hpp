#pragma once

#include <stdexcept>
#include <string>

namespace liplab {

/// Bad input: shape mismatch, violated precondition, malformed config.
class InvalidArgument : public std::runtime_error {
public:
    explicit InvalidArgument(const std::string& msg) : std::runtime_error(msg) {}
};

/// Enumeration exceeded its LP-call or wall-clock budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& msg, std::uint64_t lp_solves, double seconds)
        : std::runtime_error(msg), lp_solves(lp_solves), seconds(seconds) {}
    std::uint64_t lp_solves;
    double seconds;
};

/// A numerical routine could not certify its result (indeterminate LP,
/// non-convergent quadrature). Never raised silently in place of a wrong answer.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace liplab

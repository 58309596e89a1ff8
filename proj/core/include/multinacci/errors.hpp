#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace multinacci {

/// Rejected input. `field()` names the offending parameter so front ends can
/// point at the flag that caused it.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An iterative solver ran out of its iteration budget. Carries the best
/// residuals seen so callers can report how close it got.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& message, std::vector<double> residuals)
        : std::runtime_error(message), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

}  // namespace multinacci

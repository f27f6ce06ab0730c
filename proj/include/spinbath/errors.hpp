// errors.hpp — Error taxonomy shared by all engines
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinbath {

// Invalid arguments or model preconditions (bad site index, beta <= 0, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured resource cap (dense dimension too large).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric routine failed (eigensolver non-convergence, ...).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model variant not handled by the called engine.
struct unsupported_model_error : domain_error {
    using domain_error::domain_error;
};

// Requested accuracy not reached; carries the best available answer.
struct accuracy_error : std::runtime_error {
    accuracy_error(const std::string& msg, double estimate, double bound)
        : std::runtime_error(msg), best_estimate(estimate), error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

// Time maximization could not bracket a rise above the t = 0 baseline.
struct search_error : numeric_error {
    search_error(const std::string& msg, std::vector<double> coarse_profile)
        : numeric_error(msg), profile(std::move(coarse_profile)) {}
    std::vector<double> profile;
};

// Derivative scan found no positive slope anywhere on the grid.
struct flat_profile_error : numeric_error {
    using numeric_error::numeric_error;
};

}  // namespace spinbath

#pragma once

#include <stdexcept>
#include <string>

namespace fracgp {

inline constexpr const char* kToolVersion = "0.1.0";

// Bad configuration or hyperparameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid numeric input (non-finite coordinates, nonpositive log inputs, ...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure that survived the jitter escalation (CLI exit code 3).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fracgp

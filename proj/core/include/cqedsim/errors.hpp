#pragma once

#include <stdexcept>
#include <string>

namespace cqedsim {

struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownLabel : std::runtime_error {
    explicit UnknownLabel(const std::string& msg) : std::runtime_error(msg) {}
};

struct ModelMismatch : std::runtime_error {
    explicit ModelMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct MaxRoundsExceeded : std::runtime_error {
    MaxRoundsExceeded(const std::string& msg, int rounds)
        : std::runtime_error(msg), rounds_attempted(rounds) {}
    int rounds_attempted;
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AmbiguousBranch : std::runtime_error {
    explicit AmbiguousBranch(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cqedsim

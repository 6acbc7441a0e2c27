#pragma once

#include <stdexcept>
#include <string>

namespace sqm {

/// Bad user input: config values outside the validity regime, malformed
/// files, unknown keys. CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: root bracket without sign change, eigensolver
/// non-convergence. CLI maps this to exit code 2.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Markov-chain step-size tuning ended outside the acceptable acceptance
/// window. CLI maps this to exit code 2.
class TuningError : public std::runtime_error {
public:
    explicit TuningError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sqm

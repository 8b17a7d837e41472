#pragma once

#include <stdexcept>
#include <string>

namespace topomode {

/// Adaptive step controller could not meet the tolerance above the machine floor.
struct StepFailure : std::runtime_error {
    explicit StepFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Node doubling failed to converge within the level budget.
struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

/// No multi-start converged to a valid variational minimum.
struct MinimizationFailure : std::runtime_error {
    explicit MinimizationFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Both bracket ends classify identically and the order parameter shows no jump.
struct InvalidBracket : std::invalid_argument {
    explicit InvalidBracket(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed or out-of-contract configuration input.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace topomode

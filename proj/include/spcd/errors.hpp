#pragma once

#include <stdexcept>
#include <string>

namespace spcd {

// Stage-1 allocation produced an empty treatment arm (n too small for the
// configured fractions). Raised at simulation time or by theta1.
class EmptyArmError : public std::runtime_error {
public:
    explicit EmptyArmError(const std::string& what) : std::runtime_error(what) {}
};

// A stage-2 arm among classified non-responders is empty. The Monte Carlo
// harness treats this as a skippable replicate; everywhere else it is an error.
class EmptyStage2ArmError : public std::runtime_error {
public:
    explicit EmptyStage2ArmError(const std::string& what) : std::runtime_error(what) {}
};

// No placebo-arm participant was classified as a non-responder, so the
// negative predictive value is undefined.
class NoNonRespondersError : public std::runtime_error {
public:
    explicit NoNonRespondersError(const std::string& what) : std::runtime_error(what) {}
};

// EM collapsed onto a point mass (shared component SD hit the floor).
class DegenerateFitError : public std::runtime_error {
public:
    explicit DegenerateFitError(const std::string& what) : std::runtime_error(what) {}
};

// Fewer observations than the mixture fit requires.
class InsufficientDataError : public std::invalid_argument {
public:
    explicit InsufficientDataError(const std::string& what) : std::invalid_argument(what) {}
};

// A root finder failed to meet its residual target.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or unknown key in a run configuration; message names the key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spcd

#pragma once

#include <stdexcept>
#include <string>

namespace tangles {

struct TangleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : TangleError {
    using TangleError::TangleError;
};

// n is not divisible by the reduced denominator of some ratio.
struct IncompatibleError : TangleError {
    long long n;
    int component;
    IncompatibleError(long long n_, int component_, const std::string& msg)
        : TangleError(msg), n(n_), component(component_) {}
};

struct InvalidIndex : TangleError {
    using TangleError::TangleError;
};

// A bound precondition does not hold; slack = lhs - rhs of the failing inequality.
struct PreconditionFailed : TangleError {
    std::string inequality;
    double slack;
    PreconditionFailed(std::string inequality_, double slack_)
        : TangleError("precondition failed: " + inequality_ +
                      " (slack " + std::to_string(slack_) + ")"),
          inequality(std::move(inequality_)),
          slack(slack_) {}
};

// Inputs outside a bound's supported setting (e.g. unequal sigmas, d != 1).
struct UnsupportedSetting : TangleError {
    using TangleError::TangleError;
};

// Region shape outside the supported algebra for the requested operation.
struct UnsupportedRegion : TangleError {
    using TangleError::TangleError;
};

struct NotFound : TangleError {
    using TangleError::TangleError;
};

// An index set asserted to induce a clique does not.
struct NonCliqueError : TangleError {
    using TangleError::TangleError;
};

// Quadrature or sampling failed to reach the requested tolerance.
struct NonConvergent : TangleError {
    using TangleError::TangleError;
};

struct EnumerationCapExceeded : TangleError {
    using TangleError::TangleError;
};

}  // namespace tangles

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phrect {

/// Coordinate outside the closed rectangle.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Mode index outside n >= 1.
struct InvalidModeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A time derivative was requested that the forcing cannot supply.
struct UnsupportedDerivativeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its panel budget. Carries the best estimate
/// and the last observed refinement difference.
struct QuadratureFailure : std::runtime_error {
    double best_estimate;
    double error_bound;
    QuadratureFailure(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), error_bound(err) {}
};

/// Forcing failed compatibility validation; `codes` lists the violations.
struct RejectedForcingError : std::runtime_error {
    std::vector<std::string> codes;
    RejectedForcingError(const std::string& msg, std::vector<std::string> c)
        : std::runtime_error(msg), codes(std::move(c)) {}
};

/// Time step, march direction, or CFL number violates a scheme's stability
/// constraint.
struct StepConstraintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Seam query at t = 0 with side == automatic.
struct SeamAmbiguityError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Too few nonzero coefficients to fit a decay rate.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed run configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace phrect

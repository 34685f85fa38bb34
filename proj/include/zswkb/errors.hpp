#pragma once

#include <stdexcept>
#include <string>

namespace zswkb {

/// Base class for all numerical failures (CLI maps these to exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Base class for precondition/config violations (CLI exit code 2).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : ConfigError {
    using ConfigError::ConfigError;
};
struct NonAnalyticEvaluation : ConfigError {
    using ConfigError::ConfigError;
};
struct UnsupportedDecayClass : ConfigError {
    using ConfigError::ConfigError;
};
struct OutOfRange : ConfigError {
    using ConfigError::ConfigError;
};
struct NearZeroLambda : ConfigError {
    using ConfigError::ConfigError;
};
struct BaseMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct StiffnessFailure : NumericalError {
    using NumericalError::NumericalError;
};
struct TailError : NumericalError {
    using NumericalError::NumericalError;
};
struct BoundaryZero : NumericalError {
    using NumericalError::NumericalError;
};
struct NotAnEigenvalue : NumericalError {
    using NumericalError::NumericalError;
};
struct OnCutError : NumericalError {
    using NumericalError::NumericalError;
};
struct SingularityHit : NumericalError {
    using NumericalError::NumericalError;
};
struct DegenerateCluster : NumericalError {
    using NumericalError::NumericalError;
};
struct BranchSwap : NumericalError {
    using NumericalError::NumericalError;
};
struct NonMonotonePhase : NumericalError {
    using NumericalError::NumericalError;
};
struct NotProgressive : NumericalError {
    using NumericalError::NumericalError;
};
struct KernelOverflow : NumericalError {
    using NumericalError::NumericalError;
};
struct TurningPointSingularity : NumericalError {
    using NumericalError::NumericalError;
};
struct RegionIdentificationFailure : NumericalError {
    using NumericalError::NumericalError;
};
struct H1Violation : NumericalError {
    using NumericalError::NumericalError;
};
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace zswkb

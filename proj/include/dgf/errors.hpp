#pragma once

#include <stdexcept>
#include <string>

namespace dgf {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input data failed a structural or numeric check. The CLI maps this
/// family to exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

struct RowSumError : ValidationError {
    using ValidationError::ValidationError;
};

struct DiagonalError : ValidationError {
    using ValidationError::ValidationError;
};

struct ReducibleError : ValidationError {
    using ValidationError::ValidationError;
};

struct NegativeEntryError : ValidationError {
    using ValidationError::ValidationError;
};

/// Simplex entry outside [0,1].
struct RangeError : ValidationError {
    using ValidationError::ValidationError;
};

/// Simplex entries do not sum to 1.
struct SumError : ValidationError {
    using ValidationError::ValidationError;
};

/// Conserved sum drifted during a trajectory; the engine aborts rather
/// than renormalize, because drift indicates a bug, not noise.
struct SumDriftError : ValidationError {
    using ValidationError::ValidationError;
};

struct DimensionMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct CsvError : ValidationError {
    using ValidationError::ValidationError;
};

struct ConfigError : ValidationError {
    using ValidationError::ValidationError;
};

/// Iterative eigenvector computation ran out of iterations. Carries the
/// last observed residual. The CLI maps non-convergence to exit code 3.
struct NoConvergence : Error {
    NoConvergence(const std::string& what, double last_residual, long iterations)
        : Error(what), residual(last_residual), iterations(iterations) {}
    double residual;
    long iterations;
};

/// Sinkhorn balancing failed to reach tolerance within the sweep budget.
struct SinkhornNoConvergence : Error {
    SinkhornNoConvergence(const std::string& what, long sweeps, double worst_column_error)
        : Error(what), sweeps(sweeps), worst_column_error(worst_column_error) {}
    long sweeps;
    double worst_column_error;
};

/// Quadratic discriminant 1 - 4a(n-1)/n^2 is negative.
struct DiscriminantError : Error {
    using Error::Error;
};

struct GridTooLarge : Error {
    using Error::Error;
};

struct UnknownPreset : Error {
    using Error::Error;
};

}  // namespace dgf

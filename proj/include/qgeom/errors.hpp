#pragma once

#include <stdexcept>
#include <string>

namespace qgeom {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: wrong shapes, out-of-range parameters, malformed files,
// violated state invariants. The CLI maps these to exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

struct ShapeError : ValidationError {
    using ValidationError::ValidationError;
};

struct RangeError : ValidationError {
    using ValidationError::ValidationError;
};

struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};

struct HermiticityError : ValidationError {
    using ValidationError::ValidationError;
};

// Caller picked the spectral branch that does not match the state's rank.
struct WrongBranchError : ValidationError {
    using ValidationError::ValidationError;
};

// Regret is undefined when the quantum Fisher information vanishes.
struct UndefinedRegretError : ValidationError {
    using ValidationError::ValidationError;
};

// Every measurement outcome fell below the probability floor.
struct DegenerateMeasurementError : ValidationError {
    using ValidationError::ValidationError;
};

// A numerical routine failed or produced an inconsistent result.
struct NumericError : Error {
    using Error::Error;
};

// A state derivative has weight where the solver cannot place it
// (outside the state's support), or a residual check failed.
struct InconsistentDerivativeError : NumericError {
    using NumericError::NumericError;
};

// An eigenvalue pair is too close for a spectral formula to be evaluated.
struct DegeneracyError : NumericError {
    using NumericError::NumericError;
};

// Finite-difference step so small the quotient is pure round-off.
struct StepUnderflowError : NumericError {
    using NumericError::NumericError;
};

// Classical Fisher information exceeded the quantum bound beyond tolerance;
// signals an upstream numerical bug rather than bad user input.
struct MonotonicityError : NumericError {
    using NumericError::NumericError;
};

// The requested oracle does not apply to this input (e.g. a rank-deficient
// state handed to the full-rank fidelity oracle).
struct UnsupportedOracleError : Error {
    using Error::Error;
};

} // namespace qgeom

#pragma once

#include <stdexcept>
#include <string>

namespace specpoly {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not match (orders, vector lengths, ambient dimensions).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be positive definite is not; carries the offending
/// minimum eigenvalue.
class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(const std::string& what, double lambda_min)
        : Error(what), lambda_min(lambda_min) {}
    double lambda_min;
};

/// A congruence or domain-restriction matrix is (numerically) singular.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// An iterative numeric kernel failed to converge.
class NumericFailureError : public Error {
public:
    using Error::Error;
};

/// The eigenvalue-maximization subproblem hit its iteration cap with the
/// bracket still wider than the tolerance; carries the remaining gap.
class SolverFailureError : public Error {
public:
    SolverFailureError(const std::string& what, double gap)
        : Error(what), gap(gap) {}
    double gap;
};

/// Repeated generic sampling produced inconsistent joint invariant subspaces.
class NonGenericSamplingError : public Error {
public:
    using Error::Error;
};

/// Simultaneous diagonalization left off-diagonal coupling above tolerance;
/// carries the residual norm.
class NormalFormError : public Error {
public:
    NormalFormError(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual;
};

/// Problem or report file could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace specpoly

#pragma once

#include <stdexcept>
#include <string>

namespace beamspec {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The boundary condition has a singular reduced matrix (det = 0).
struct NotWellPosed : Error {
    explicit NotWellPosed(const std::string& what = "boundary condition is not well-posed")
        : Error(what) {}
};

/// lambda is 0 or 1/k, where the eigen-ODE branch parameter is undefined.
struct DegenerateLambda : Error {
    explicit DegenerateLambda(const std::string& what = "lambda is 0 or 1/k") : Error(what) {}
};

/// Matrix is not fixed by conjugation with the half-turn entry rotation.
struct NotInPibar : Error {
    explicit NotInPibar(const std::string& what = "matrix fails R*conj(A)*R = A") : Error(what) {}
};

struct ZeroLambda : Error {
    explicit ZeroLambda(const std::string& what = "lambda must be nonzero") : Error(what) {}
};

/// X_lambda(x) is numerically singular: lambda is at (or too close to) a
/// base-spectrum point.
struct SingularX : Error {
    explicit SingularX(const std::string& what = "X matrix is singular at this lambda")
        : Error(what) {}
};

struct ZeroImage : Error {
    explicit ZeroImage(const std::string& what = "image vector is numerically zero") : Error(what) {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& what = "argument outside [-l, l]") : Error(what) {}
};

/// lambda coincides with an eigenvalue of the reference operator, where the
/// eigenvalue-realization construction breaks down.
struct InSpecQ : Error {
    explicit InSpecQ(const std::string& what = "lambda is at or near a base-spectrum eigenvalue")
        : Error(what) {}
};

/// Internal consistency failure (e.g. a quantity that must be real came out
/// with a large imaginary part).
struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace beamspec

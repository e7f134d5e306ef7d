#pragma once

#include <stdexcept>
#include <string>

namespace argsector {

/// Base class for all library failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A violated input contract: bad spec, radius at a zero modulus,
/// unsupported representation, out-of-domain evaluation.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A computation that started but could not certify its result.
class NumericalError : public Error {
public:
    using Error::Error;
};

class SingularityError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class UnsupportedRepresentationError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Adaptive circle tracing hit its depth cap; the offending angular
/// interval points at a suspected zero on or near the circle.
class TraceFailureError : public NumericalError {
public:
    TraceFailureError(double lo, double hi, const std::string& what)
        : NumericalError(what), thetaLo(lo), thetaHi(hi) {}
    double thetaLo;
    double thetaHi;
};

/// A sampled curve was too coarse to resolve a feature (level plateau,
/// unresolvable crossing); the caller should retrace with a finer step.
class RefinementRequestError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Function-spec document failure with a stable code and a JSON-pointer path.
class SpecParseError : public PreconditionError {
public:
    SpecParseError(std::string code_, std::string path_, const std::string& message)
        : PreconditionError(code_ + " at '" + path_ + "': " + message),
          code(std::move(code_)),
          path(std::move(path_)) {}
    std::string code;
    std::string path;
};

}  // namespace argsector

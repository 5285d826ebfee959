#ifndef GEOXFORM_ERRORS_HPP
#define GEOXFORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geoxform {

/// Base class for all geoxform error conditions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Gamma function evaluated at a nonpositive integer.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& what) : Error(what) {}
};

/// A gamma factor of an asymptotic coefficient hits a pole.
class CoefficientPole : public Error {
public:
    explicit CoefficientPole(const std::string& what) : Error(what) {}
};

/// Hypergeometric value requested where the function diverges.
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& what) : Error(what) {}
};

/// Requested transformation identity does not apply to these parameters.
class TransformInapplicable : public Error {
public:
    explicit TransformInapplicable(const std::string& what) : Error(what) {}
};

/// Integrand fails the endpoint integrability check.
class NonIntegrable : public Error {
public:
    explicit NonIntegrable(const std::string& what) : Error(what) {}
};

/// Infinite-domain tail did not pass the decay test.
class TruncationFailure : public Error {
public:
    explicit TruncationFailure(const std::string& what) : Error(what) {}
};

/// A norm integral diverges; a reportable outcome for probes.
class DivergentNorm : public Error {
public:
    explicit DivergentNorm(const std::string& what) : Error(what) {}
};

/// Calibration reference point where the closed-form shape vanishes.
class DegenerateReference : public Error {
public:
    explicit DegenerateReference(const std::string& what) : Error(what) {}
};

/// Weight evaluated at a partition point with negative exponent.
class WeightPole : public Error {
public:
    explicit WeightPole(const std::string& what) : Error(what) {}
};

/// Sphere quadrature requested beyond the supported dimension range.
class UnsupportedDimension : public Error {
public:
    explicit UnsupportedDimension(const std::string& what) : Error(what) {}
};

} // namespace geoxform

#endif

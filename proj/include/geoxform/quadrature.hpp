#ifndef GEOXFORM_QUADRATURE_HPP
#define GEOXFORM_QUADRATURE_HPP

#include <functional>

#include "geoxform/errors.hpp"

namespace geoxform {

/// Tolerances and policy knobs for all quadrature in the library.
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_depth = 40;
    /// Consecutive decaying octaves required before an infinite tail is cut.
    int tail_octaves = 3;
    /// Hard cap on interval doublings for infinite tails.
    int max_tail_doublings = 48;

    QuadratureSpec tightened(double factor) const {
        QuadratureSpec q = *this;
        q.rel_tol *= factor;
        q.abs_tol *= factor;
        return q;
    }
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7-15) integration over a finite interval.
double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec);

/// Finite-interval integration with algebraic endpoint singularities:
/// f(t) ~ (t-a)^eA near a and (b-t)^eB near b with eA, eB > -1. Exponents
/// <= -1 raise NonIntegrable. Half-integer and other fractional exponents
/// are flattened by power substitutions before the adaptive pass.
double integrate_endpoint_singular(const Integrand& f, double a, double b,
                                   double eA, double eB, const QuadratureSpec& spec);

/// Integration over [a, inf): interval-doubling segments with a decay test;
/// raises TruncationFailure when the tail refuses to decay.
double integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec,
                             double eA = 0.0);

/// Non-adaptive 21-point Gauss-Kronrod on one interval (for cheap smooth
/// sub-integrals where adaptivity is overkill).
double integrate_fixed(const Integrand& f, double a, double b);

} // namespace geoxform

#endif

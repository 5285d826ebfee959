#ifndef GEOXFORM_HYPERFUNC_HPP
#define GEOXFORM_HYPERFUNC_HPP

#include "geoxform/errors.hpp"

namespace geoxform {

/// Gamma function on the reals minus the nonpositive integers.
double gamma_fn(double x);

/// log|Gamma(x)|; *sign receives the sign of Gamma(x).
double lgamma_signed(double x, int* sign);

/// Rising factorial x (x+1) ... (x+m-1); 1 for m = 0.
double pochhammer(double x, int m);

/// Parameters of a real Gauss hypergeometric evaluation.
struct HypParams {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double z = 0.0;
};

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z <= 1, with the
/// z = 1 value meaningful only when c - a - b > 0.
double hyp2f1(const HypParams& p);
double hyp2f1(double a, double b, double c, double z);

enum class Hyp2f1Transform { EulerA, EulerB, EulerC, InversionZ };

/// Evaluate 2F1 through one of the Euler/Pfaff connection identities or the
/// z -> 1/z inversion; agrees with hyp2f1 on the identity's domain.
double hyp2f1_transform(const HypParams& p, Hyp2f1Transform which);

/// Behaviour of 2F1(a, b; c; z) as z -> 1-.
struct AsymptoticClass {
    enum class Kind { ConstantAtOne, LogDivergent, PowerDivergent };
    Kind kind = Kind::ConstantAtOne;
    /// Limit value (ConstantAtOne) or the coefficient of -log(1-z),
    /// respectively (1-z)^exponent, in the divergent cases.
    double coefficient = 0.0;
    /// c - b - a; meaningful for PowerDivergent.
    double exponent = 0.0;
};

AsymptoticClass hyp2f1_near_one_class(double a, double b, double c);

/// True when x is within tol of a nonpositive integer.
bool is_nonpositive_integer(double x, double tol = 1e-12);

} // namespace geoxform

#endif

#ifndef GEOXFORM_RADIAL_PROFILE_HPP
#define GEOXFORM_RADIAL_PROFILE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "geoxform/geometry.hpp"

namespace geoxform {

/// A radial function presented through the space's canonical argument
/// (t, cosh t, or cos t on the ambient side; t, sinh t, or sin t on the
/// submanifold side), supported on [t_lo, t_hi] in geodesic distance.
///
/// e_lo / e_hi are algebraic endpoint exponents: evaluator behaves like
/// (t - t_lo)^e_lo near t_lo and (t_hi - t)^e_hi near t_hi.
struct RadialProfile {
    std::function<double(double)> eval;
    double t_lo = 0.0;
    double t_hi = std::numeric_limits<double>::infinity();
    double e_lo = 0.0;
    double e_hi = 0.0;

    double operator()(double arg) const { return eval(arg); }

    double value_at_distance(const Space& space, Side side, double t) const {
        if (t < t_lo || t > t_hi) return 0.0;
        return eval(canonical_arg(space, side, t));
    }

    bool compact() const { return std::isfinite(t_hi); }
};

/// Constant value on [0, domain sup).
RadialProfile const_profile(double value);

/// chi_[a,b](d) * s_c(d)^sc_pow * s_c'(d)^scp_pow presented through the
/// canonical argument of the requested side.
RadialProfile power_profile(const Space& space, Side side, double a, double b,
                            double sc_pow, double scp_pow);

/// Characteristic function of the ball of radius lambda.
RadialProfile ball_profile(const Space& space, double lambda);

/// Characteristic function of the annulus a < d < b.
RadialProfile annulus_profile(const Space& space, double a, double b);

/// Restrict a profile's support to [t_lo, min(t_hi, cutoff)].
RadialProfile truncate_profile(const RadialProfile& f, double cutoff);

/// Pointwise scale.
RadialProfile scale_profile(const RadialProfile& f, double factor);

/// Piecewise-linear profile from sampled (distance, value) rows; presented
/// through the canonical argument by inverting it back to distance.
RadialProfile table_profile(const Space& space, Side side,
                            const std::vector<std::pair<double, double>>& rows);

} // namespace geoxform

#endif

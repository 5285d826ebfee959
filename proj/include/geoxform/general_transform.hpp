#ifndef GEOXFORM_GENERAL_TRANSFORM_HPP
#define GEOXFORM_GENERAL_TRANSFORM_HPP

#include <functional>

#include "geoxform/quadrature.hpp"
#include "geoxform/radial_profile.hpp"

namespace geoxform {

/// A function on the ambient space in polar form: direction on S^(n-1)
/// (an n-vector) and geodesic radius.
struct AmbientFunction {
    std::function<double(const std::vector<double>&, double)> eval;
    double max_radius = std::numeric_limits<double>::infinity();
    /// Algebraic vanishing exponent of the profile at the support edge.
    double edge_exponent = 0.0;
    enum class Smoothness { Smooth, PiecewiseSmooth };
    Smoothness smoothness = Smoothness::Smooth;
};

/// Wrap a radial profile as an ambient function.
AmbientFunction ambient_from_radial(const Space& space, const RadialProfile& f);

/// The geodesic-radius map of the hyperbolic line parametrization:
/// mu_bar(x) = ln((1+x)/(1-x)) = 2 atanh(x) for 0 < x < 1.
double mu_bar(double x);

/// Integral over the polar cap { omega in S^k : <omega, e_{k+1}> > tau } of
/// an integrand on S^k (given as a (k+1)-vector with the pole last), using
/// the polar parametrization omega = (sin(theta) sigma, cos(theta)) with
/// surface density sin^(k-1) theta.
double cap_quadrature(int k, double tau,
                      const std::function<double(const std::vector<double>&)>& integrand,
                      const QuadratureSpec& quad);

/// k-plane transform of a general function via the spherical-cap formulas;
/// requires coord.h > 0. On the sphere the input is evenized first;
/// *evenness_ok (when given) reports whether the sampled evenness check
/// passed.
double kplane_general(const Space& space, const SubmanifoldCoord& coord,
                      const AmbientFunction& f, const QuadratureSpec& quad,
                      bool* evenness_ok = nullptr);

} // namespace geoxform

#endif

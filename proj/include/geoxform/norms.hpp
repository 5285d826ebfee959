#ifndef GEOXFORM_NORMS_HPP
#define GEOXFORM_NORMS_HPP

#include <utility>
#include <vector>

#include "geoxform/radial_transform.hpp"

namespace geoxform {

/// Weighted-Lebesgue exponents: the density is s_c(d)^a1 * s_c'(d)^a2 and
/// the integrability exponent is p >= 1. Used on both the ambient and the
/// submanifold side (beta1, beta2, r read the same fields).
struct WeightConfig {
    double a1 = 0.0;
    double a2 = 0.0;
    double p = 1.0;
};

enum class NormRoute {
    Direct,      // integrate in geodesic distance
    CanonicalU,  // substitute the canonical argument
    SquareSub,   // substitute s_c(t)^2 (hyperbolic/spherical)
    TanSub,      // substitute tan(t)^2 (spherical only)
};

/// Weighted L^p norm of a radial ambient function, including the surface
/// factor |S^(n-1)| (doubled on the sphere for the even extension).
double lp_norm_radial(const Space& space, const RadialProfile& f,
                      const WeightConfig& w, const QuadratureSpec& quad,
                      NormRoute route = NormRoute::Direct);

/// Weighted L^r norm of R_k f on the submanifold space, by composing the
/// radial transform with the submanifold measure. The substitution route
/// integrates in the canonical variable instead.
double lr_norm_transform(const Space& space, int k, const RadialProfile& f,
                         const WeightConfig& w_xi, const QuadratureSpec& quad,
                         NormRoute route = NormRoute::Direct);

/// Finite list of disjoint radial annuli [a_i, b_i], ordered increasing.
struct LayeredRadialSet {
    std::vector<std::pair<double, double>> layers;

    LayeredRadialSet() = default;
    explicit LayeredRadialSet(std::vector<std::pair<double, double>> ls);

    bool empty() const { return layers.empty(); }
    RadialProfile indicator(const Space& space) const;
};

/// Weighted measure of the set (with surface factors).
double weighted_measure(const Space& space, const LayeredRadialSet& set,
                        const WeightConfig& w, const QuadratureSpec& quad = {});

/// L^(p,1) norm of the characteristic function of a layered radial set:
/// the weighted measure to the power 1/p.
double lorentz_p1_norm(const Space& space, const LayeredRadialSet& set,
                       const WeightConfig& w, const QuadratureSpec& quad = {});

/// Both sides of the transform/dual pairing for radial data:
/// integral of (R_k f) phi over the submanifold space versus the integral
/// of f (R_k* phi) over the ambient space.
std::pair<double, double> duality_pairing(const Space& space, int k,
                                          const RadialProfile& f,
                                          const RadialProfile& phi,
                                          const QuadratureSpec& quad);

} // namespace geoxform

#endif

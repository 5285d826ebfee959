#include "geoxform/norms.hpp"

#include <algorithm>
#include <cmath>

namespace geoxform {

namespace {

const double kPi = 3.14159265358979323846;

double ambient_surface_factor(const Space& space) {
    const double a = sphere_area(space.dim - 1);
    return space.curvature == Curvature::Spherical ? 2.0 * a : a;
}

double ambient_sup(const Space& space) { return space.distance_sup(); }

double xi_sup(const Space& space) {
    return space.curvature == Curvature::Spherical
               ? kPi / 2.0
               : std::numeric_limits<double>::infinity();
}

double integrate_possibly_infinite(const Integrand& g, double a, double b,
                                   double eA, double eB, const QuadratureSpec& quad) {
    try {
        if (std::isinf(b))
            return integrate_to_infinity(g, a, quad, eA);
        return integrate_endpoint_singular(g, a, b, eA, eB, quad);
    } catch (const TruncationFailure& e) {
        throw DivergentNorm(e.what());
    } catch (const NonIntegrable& e) {
        throw DivergentNorm(e.what());
    }
}

double lp_integral_direct(const Space& space, const RadialProfile& f,
                          const WeightConfig& w, const QuadratureSpec& quad) {
    const int n = space.dim;
    const double D = ambient_sup(space);
    const double lo = f.t_lo;
    const double hi = std::min(f.t_hi, D);
    if (!(hi > lo)) return 0.0;
    const Integrand g = [&space, &f, &w, n](double t) {
        const double v = std::fabs(f.eval(canonical_arg(space, Side::Ambient, t)));
        return std::pow(v, w.p) * std::pow(s_c(space, t), w.a1 + n - 1) *
               std::pow(std::fabs(s_c_prime(space, t)), w.a2);
    };
    double eA = w.p * f.e_lo;
    if (lo == 0.0) eA += w.a1 + n - 1;
    double eB = w.p * f.e_hi;
    if (space.curvature == Curvature::Spherical && hi == kPi / 2.0)
        eB += w.a2;
    if (eA <= -1.0 || eB <= -1.0)
        throw NonIntegrable("norm integrand endpoint exponent <= -1");
    return integrate_possibly_infinite(g, lo, hi, eA, eB, quad);
}

double lp_integral_route(const Space& space, const RadialProfile& f,
                         const WeightConfig& w, const QuadratureSpec& quad,
                         NormRoute route) {
    const int n = space.dim;
    if (space.curvature == Curvature::Flat || route == NormRoute::Direct)
        return lp_integral_direct(space, f, w, quad);

    const double D = ambient_sup(space);
    const double lo = f.t_lo;
    const double hi = std::min(f.t_hi, D);
    if (!(hi > lo)) return 0.0;

    if (space.curvature == Curvature::Hyperbolic) {
        if (route == NormRoute::CanonicalU) {
            // u = cosh t
            const double uLo = std::cosh(lo);
            const double uHi = std::isinf(hi) ? hi : std::cosh(hi);
            const Integrand g = [&f, &w, n](double u) {
                return std::pow(std::fabs(f.eval(u)), w.p) *
                       std::pow(u * u - 1.0, 0.5 * (w.a1 + n) - 1.0) *
                       std::pow(u, w.a2);
            };
            double eA = w.p * f.e_lo * 0.5;
            if (lo == 0.0) eA += 0.5 * (w.a1 + n) - 1.0;
            if (eA <= -1.0) throw NonIntegrable("endpoint exponent <= -1");
            return integrate_possibly_infinite(g, uLo, uHi, eA, w.p * f.e_hi, quad);
        }
        // SquareSub: u = sinh^2 t
        const double sl = std::sinh(lo);
        const double uLo = sl * sl;
        const double uHi = std::isinf(hi) ? hi : std::sinh(hi) * std::sinh(hi);
        const Integrand g = [&f, &w, n](double u) {
            return 0.5 * std::pow(std::fabs(f.eval(std::sqrt(u + 1.0))), w.p) *
                   std::pow(u, 0.5 * (w.a1 + n) - 1.0) *
                   std::pow(u + 1.0, 0.5 * (w.a2 - 1.0));
        };
        double eA = w.p * f.e_lo * 0.5;
        if (lo == 0.0) eA += 0.5 * (w.a1 + n) - 1.0;
        if (eA <= -1.0) throw NonIntegrable("endpoint exponent <= -1");
        return integrate_possibly_infinite(g, uLo, uHi, eA, w.p * f.e_hi, quad);
    }

    // Spherical routes.
    if (route == NormRoute::CanonicalU) {
        // u = cos^2 t, decreasing in t
        const double cHi = std::cos(hi);
        const double uLo = cHi * cHi;
        const double cLo = std::cos(lo);
        const double uHi = cLo * cLo;
        const Integrand g = [&f, &w, n](double u) {
            return 0.5 * std::pow(std::fabs(f.eval(std::sqrt(u))), w.p) *
                   std::pow(1.0 - u, 0.5 * (w.a1 + n) - 1.0) *
                   std::pow(u, 0.5 * (w.a2 - 1.0));
        };
        double eA = w.p * f.e_hi * 0.5; // u -> uLo corresponds to t -> hi
        if (hi == kPi / 2.0) eA += 0.5 * (w.a2 - 1.0);
        double eB = w.p * f.e_lo * 0.5;
        if (lo == 0.0) eB += 0.5 * (w.a1 + n) - 1.0;
        if (eA <= -1.0 || eB <= -1.0)
            throw NonIntegrable("endpoint exponent <= -1");
        return integrate_possibly_infinite(g, uLo, uHi, eA, eB, quad);
    }
    if (route == NormRoute::SquareSub) {
        // u = sin^2 t, increasing in t
        const double sLo = std::sin(lo);
        const double sHi = std::sin(hi);
        const Integrand g = [&f, &w, n](double u) {
            return 0.5 * std::pow(std::fabs(f.eval(std::sqrt(1.0 - u))), w.p) *
                   std::pow(u, 0.5 * (w.a1 + n) - 1.0) *
                   std::pow(1.0 - u, 0.5 * (w.a2 - 1.0));
        };
        double eA = w.p * f.e_lo * 0.5;
        if (lo == 0.0) eA += 0.5 * (w.a1 + n) - 1.0;
        double eB = w.p * f.e_hi * 0.5;
        if (hi == kPi / 2.0) eB += 0.5 * (w.a2 - 1.0);
        if (eA <= -1.0 || eB <= -1.0)
            throw NonIntegrable("endpoint exponent <= -1");
        return integrate_possibly_infinite(g, sLo * sLo, sHi * sHi, eA, eB, quad);
    }
    // TanSub: u = tan^2 t
    const double tLo = std::tan(lo);
    const double uLo = tLo * tLo;
    const double uHi = (hi >= kPi / 2.0) ? std::numeric_limits<double>::infinity()
                                         : std::tan(hi) * std::tan(hi);
    const Integrand g = [&f, &w, n](double u) {
        return 0.5 * std::pow(std::fabs(f.eval(1.0 / std::sqrt(1.0 + u))), w.p) *
               std::pow(u, 0.5 * (w.a1 + n) - 1.0) *
               std::pow(1.0 + u, -0.5 * (w.a1 + w.a2 + n + 1.0));
    };
    double eA = w.p * f.e_lo * 0.5;
    if (lo == 0.0) eA += 0.5 * (w.a1 + n) - 1.0;
    if (eA <= -1.0) throw NonIntegrable("endpoint exponent <= -1");
    return integrate_possibly_infinite(g, uLo, uHi, eA, w.p * f.e_hi * 0.5, quad);
}

} // namespace

double lp_norm_radial(const Space& space, const RadialProfile& f,
                      const WeightConfig& w, const QuadratureSpec& quad,
                      NormRoute route) {
    if (!(w.p >= 1.0))
        throw DomainError("norm exponent must satisfy p >= 1");
    const double integral = lp_integral_route(space, f, w, quad, route);
    return std::pow(ambient_surface_factor(space) * integral, 1.0 / w.p);
}

double lr_norm_transform(const Space& space, int k, const RadialProfile& f,
                         const WeightConfig& w, const QuadratureSpec& quad,
                         NormRoute route) {
    const int n = space.dim;
    if (!(w.p >= 1.0))
        throw DomainError("norm exponent must satisfy r >= 1");
    if (k < 1 || k > n - 1)
        throw DomainError("need 1 <= k <= n-1");
    const double hi = std::min(f.t_hi, xi_sup(space));
    if (!(hi > 0.0)) return 0.0;
    const QuadratureSpec inner = quad.tightened(1e-2);
    const double factor = sphere_area(n - k - 1);

    if (route == NormRoute::Direct || space.curvature == Curvature::Flat) {
        const Integrand g = [&, k, n](double h) {
            const double R = std::fabs(kplane_radial(space, k, f, h, inner));
            return std::pow(R, w.p) * std::pow(s_c(space, h), w.a1) *
                   std::pow(s_c_prime(space, h), w.a2) * polar_weight_xi(space, k, h);
        };
        const double eA = w.a1 + n - k - 1;
        double eB = 0.0;
        if (space.curvature == Curvature::Spherical && hi >= kPi / 2.0)
            eB = w.a2 + k;
        if (eA <= -1.0 || eB <= -1.0)
            throw DivergentNorm("submanifold-side weight is not integrable");
        const double integral = integrate_possibly_infinite(g, 0.0, hi, eA, eB, quad);
        return std::pow(factor * integral, 1.0 / w.p);
    }

    // Substitution route: outer integral in the canonical variable, inner
    // transform in the canonical variable as well.
    const double sA = sphere_area(k - 1);
    if (space.curvature == Curvature::Hyperbolic) {
        const double ex = 0.5 * k - 1.0;
        auto innerInt = [&](double s) {
            const double uLo = std::max(s, std::cosh(f.t_lo));
            const double uHi = std::isinf(f.t_hi)
                                   ? std::numeric_limits<double>::infinity()
                                   : std::cosh(f.t_hi);
            if (!(uHi > uLo)) return 0.0;
            const Integrand gi = [&f, s, ex](double u) {
                return f.eval(u) * std::pow(u * u - s * s, ex);
            };
            double eLow = (s >= std::cosh(f.t_lo)) ? ex : f.e_lo;
            if (std::isinf(uHi))
                return integrate_to_infinity(gi, uLo, inner, eLow);
            return integrate_endpoint_singular(gi, uLo, uHi, eLow, f.e_hi, inner);
        };
        const Integrand g = [&](double s) {
            const double R = sA * std::pow(s, 1.0 - k) * innerInt(s);
            return std::pow(std::fabs(R), w.p) * std::pow(s, w.a2 + k) *
                   std::pow(s * s - 1.0, 0.5 * (w.a1 + n - k) - 1.0);
        };
        const double sHi = std::isinf(hi) ? hi : std::cosh(hi);
        const double eA = 0.5 * (w.a1 + n - k) - 1.0;
        if (eA <= -1.0)
            throw DivergentNorm("submanifold-side weight is not integrable");
        const double integral = integrate_possibly_infinite(g, 1.0, sHi, eA, 0.0, quad);
        return std::pow(factor * integral, 1.0 / w.p);
    }

    // Spherical substitution route, s = cos h decreasing in h.
    const double ex = 0.5 * k - 1.0;
    auto innerInt = [&](double s) {
        const double uLo = std::cos(std::min(f.t_hi, kPi / 2.0));
        const double uHi = std::min(s, std::cos(f.t_lo));
        if (!(uHi > uLo)) return 0.0;
        const Integrand gi = [&f, s, ex](double u) {
            return f.eval(u) * std::pow(s * s - u * u, ex);
        };
        const double eUp = (s <= std::cos(f.t_lo)) ? ex : f.e_lo;
        return integrate_endpoint_singular(gi, uLo, uHi, f.e_hi, eUp, inner);
    };
    const Integrand g = [&](double s) {
        const double R = 2.0 * sA * std::pow(s, 1.0 - k) * innerInt(s);
        return std::pow(std::fabs(R), w.p) * std::pow(s, w.a2 + k) *
               std::pow(1.0 - s * s, 0.5 * (w.a1 + n - k) - 1.0);
    };
    const double sLo = std::cos(hi);
    const double eLow = w.a2 + k; // s -> 0, i.e. h -> pi/2
    const double eUp = 0.5 * (w.a1 + n - k) - 1.0;
    if (eLow <= -1.0 || eUp <= -1.0)
        throw DivergentNorm("submanifold-side weight is not integrable");
    const double integral = integrate_possibly_infinite(g, sLo, 1.0, eLow, eUp, quad);
    return std::pow(factor * integral, 1.0 / w.p);
}

LayeredRadialSet::LayeredRadialSet(std::vector<std::pair<double, double>> ls)
    : layers(std::move(ls)) {
    double last = 0.0;
    for (const auto& [a, b] : layers) {
        if (!(a >= last) || !(b > a))
            throw DomainError("layers must be disjoint, ordered, nonnegative");
        last = b;
    }
}

RadialProfile LayeredRadialSet::indicator(const Space& space) const {
    RadialProfile f;
    if (layers.empty()) {
        f.eval = [](double) { return 0.0; };
        f.t_hi = 0.0;
        return f;
    }
    f.t_lo = layers.front().first;
    f.t_hi = layers.back().second;
    const auto ls = layers;
    const Space sp = space;
    f.eval = [ls, sp](double u) {
        // invert the canonical argument back to distance
        double t = u;
        if (sp.curvature == Curvature::Hyperbolic)
            t = std::acosh(std::max(u, 1.0));
        else if (sp.curvature == Curvature::Spherical)
            t = std::acos(std::clamp(u, -1.0, 1.0));
        for (const auto& [a, b] : ls)
            if (t >= a && t <= b) return 1.0;
        return 0.0;
    };
    return f;
}

double weighted_measure(const Space& space, const LayeredRadialSet& set,
                        const WeightConfig& w, const QuadratureSpec& quad) {
    const int n = space.dim;
    const double D = ambient_sup(space);
    double total = 0.0;
    for (const auto& [a, b] : set.layers) {
        const double hi = std::min(b, D);
        if (!(hi > a)) continue;
        const Integrand g = [&space, &w, n](double t) {
            return std::pow(s_c(space, t), w.a1 + n - 1) *
                   std::pow(std::fabs(s_c_prime(space, t)), w.a2);
        };
        double eA = (a == 0.0) ? w.a1 + n - 1 : 0.0;
        double eB = 0.0;
        if (space.curvature == Curvature::Spherical && hi == kPi / 2.0)
            eB = w.a2;
        if (eA <= -1.0 || eB <= -1.0)
            throw NonIntegrable("layer measure is not finite");
        total += integrate_possibly_infinite(g, a, hi, eA, eB, quad);
    }
    return ambient_surface_factor(space) * total;
}

double lorentz_p1_norm(const Space& space, const LayeredRadialSet& set,
                       const WeightConfig& w, const QuadratureSpec& quad) {
    if (!(w.p >= 1.0))
        throw DomainError("Lorentz exponent must satisfy p >= 1");
    if (set.empty()) return 0.0;
    return std::pow(weighted_measure(space, set, w, quad), 1.0 / w.p);
}

std::pair<double, double> duality_pairing(const Space& space, int k,
                                          const RadialProfile& f,
                                          const RadialProfile& phi,
                                          const QuadratureSpec& quad) {
    const int n = space.dim;
    const QuadratureSpec inner = quad.tightened(1e-1);

    // Left side: integral over the submanifold space of (R_k f) phi.
    const double hHi = std::min({f.t_hi, phi.t_hi, xi_sup(space)});
    const double hLo = phi.t_lo;
    double lhs = 0.0;
    if (hHi > hLo) {
        const Integrand gl = [&](double h) {
            const double R = kplane_radial(space, k, f, h, inner);
            return R * phi.eval(canonical_arg(space, Side::Submanifold, h)) *
                   polar_weight_xi(space, k, h);
        };
        double eA = phi.e_lo;
        if (hLo == 0.0) eA += n - k - 1;
        double eB = 0.0;
        if (hHi == phi.t_hi) eB += phi.e_hi;
        if (space.curvature == Curvature::Spherical && hHi >= kPi / 2.0) eB += k;
        if (eA <= -1.0 || eB <= -1.0)
            throw DivergentNorm("pairing integrand is not integrable");
        lhs = sphere_area(n - k - 1) *
              integrate_possibly_infinite(gl, hLo, hHi, eA, eB, quad);
    }

    // Right side: integral over the ambient space of f (R_k* phi).
    const double rHi = std::min(f.t_hi, ambient_sup(space));
    const double rLo = f.t_lo;
    double rhs = 0.0;
    if (rHi > rLo) {
        const Integrand gr = [&](double r) {
            const double D = dual_kplane_radial(space, k, phi, r, inner);
            return D * f.eval(canonical_arg(space, Side::Ambient, r)) *
                   polar_weight_x(space, r);
        };
        double eA = f.e_lo;
        if (rLo == 0.0) eA += (n - 1) + phi.e_lo;
        double eB = f.e_hi;
        if (eA <= -1.0 || eB <= -1.0)
            throw DivergentNorm("pairing integrand is not integrable");
        rhs = ambient_surface_factor(space) *
              integrate_possibly_infinite(gr, rLo, rHi, eA, eB, quad);
    }
    return {lhs, rhs};
}

} // namespace geoxform

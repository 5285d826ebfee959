#include "geoxform/general_transform.hpp"

#include <cmath>
#include <vector>

namespace geoxform {

namespace {

const double kPi = 3.14159265358979323846;

struct SphereNode {
    std::vector<double> x;
    double w;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

// Quadrature rule on the unit m-sphere for m <= 3.
std::vector<SphereNode> sphere_rule(int m, int level) {
    std::vector<SphereNode> out;
    if (m == 0) {
        out.push_back({{1.0}, 1.0});
        out.push_back({{-1.0}, 1.0});
        return out;
    }
    if (m == 1) {
        const int N = 48 << level;
        out.reserve(N);
        for (int i = 0; i < N; ++i) {
            const double phi = 2.0 * kPi * (i + 0.5) / N;
            out.push_back({{std::cos(phi), std::sin(phi)}, 2.0 * kPi / N});
        }
        return out;
    }
    if (m == 2) {
        const int P = 24 << level;
        std::vector<double> c, w;
        gauss_legendre(P, c, w);
        const int M = 2 * P;
        out.reserve(P * M);
        for (int i = 0; i < P; ++i) {
            const double s = std::sqrt(std::max(0.0, 1.0 - c[i] * c[i]));
            for (int j = 0; j < M; ++j) {
                const double phi = 2.0 * kPi * (j + 0.5) / M;
                out.push_back({{s * std::cos(phi), s * std::sin(phi), c[i]},
                               w[i] * 2.0 * kPi / M});
            }
        }
        return out;
    }
    if (m == 3) {
        const int P = 16 << level;
        std::vector<double> c, w;
        gauss_legendre(P, c, w);
        const auto inner = sphere_rule(2, level);
        for (int i = 0; i < P; ++i) {
            const double psi = 0.5 * kPi * (c[i] + 1.0); // map [-1,1] -> [0,pi]
            const double jac = 0.5 * kPi;
            const double s = std::sin(psi);
            for (const auto& y : inner) {
                out.push_back({{s * y.x[0], s * y.x[1], s * y.x[2], std::cos(psi)},
                               w[i] * jac * s * s * y.w});
            }
        }
        return out;
    }
    throw UnsupportedDimension("sphere rules available for S^0..S^3 only");
}

// Octave-halving integration toward an endpoint at zero where the integrand
// may be supported arbitrarily close to 0 but must decay for convergence.
double integrate_toward_zero(const Integrand& f, double b, const QuadratureSpec& spec) {
    double hi = b;
    double total = 0.0;
    int quiet = 0;
    for (int i = 0; i < spec.max_tail_doublings; ++i) {
        const double lo = hi / 2.0;
        const double piece = integrate(f, lo, hi, spec);
        if (!std::isfinite(piece))
            throw NonIntegrable("cap integrand is not finite near the boundary");
        total += piece;
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
        if (std::fabs(piece) <= tol) {
            if (++quiet >= spec.tail_octaves)
                return total;
        } else {
            quiet = 0;
        }
        hi = lo;
    }
    throw NonIntegrable("cap boundary integral failed the decay test");
}

} // namespace

double mu_bar(double x) {
    if (!(x > 0.0 && x < 1.0))
        throw DomainError("mu_bar needs 0 < x < 1");
    return 2.0 * std::atanh(x);
}

AmbientFunction ambient_from_radial(const Space& space, const RadialProfile& f) {
    AmbientFunction g;
    const Space sp = space;
    const RadialProfile prof = f;
    // On the sphere the profile lives on [0, pi/2] and is extended evenly.
    g.eval = [sp, prof](const std::vector<double>&, double t) {
        if (sp.curvature == Curvature::Spherical && t > kPi / 2.0)
            t = kPi - t;
        return prof.value_at_distance(sp, Side::Ambient, t);
    };
    g.max_radius = f.t_hi;
    g.edge_exponent = f.e_hi;
    g.smoothness = AmbientFunction::Smoothness::PiecewiseSmooth;
    return g;
}

double cap_quadrature(int k, double tau,
                      const std::function<double(const std::vector<double>&)>& integrand,
                      const QuadratureSpec& quad) {
    if (k < 1 || k > 4)
        throw UnsupportedDimension("cap quadrature supports 1 <= k <= 4");
    if (!(tau >= 0.0 && tau < 1.0))
        throw DomainError("cap threshold must lie in [0, 1)");
    const double thetaMax = std::acos(tau);
    double previous = 0.0;
    for (int level = 0;; ++level) {
        const auto rule = sphere_rule(k - 1, level);
        double total = 0.0;
        std::vector<double> omega(k + 1);
        for (const auto& node : rule) {
            const Integrand g = [&](double theta) {
                const double s = std::sin(theta);
                for (int i = 0; i < k; ++i)
                    omega[i] = s * node.x[i];
                omega[k] = std::cos(theta);
                return integrand(omega) * std::pow(s, k - 1);
            };
            total += node.w * integrate(g, 0.0, thetaMax, quad);
        }
        if (k == 1)
            return total; // S^0 part is exact
        if (level > 0 &&
            std::fabs(total - previous) <=
                std::max(quad.abs_tol, 10.0 * quad.rel_tol * std::fabs(total)))
            return total;
        if (level >= 3)
            return total;
        previous = total;
    }
}

double kplane_general(const Space& space, const SubmanifoldCoord& coord,
                      const AmbientFunction& f, const QuadratureSpec& quad,
                      bool* evenness_ok) {
    const int n = space.dim;
    const int k = coord.k;
    if (k < 1 || k > n - 1)
        throw DomainError("need 1 <= k <= n-1");
    if (k > 4)
        throw UnsupportedDimension("general transform supports k <= 4");
    if (!(coord.h > 0.0))
        throw DomainError("general-function formulas need h > 0");
    if (coord.ambient_dim() != n)
        throw DomainError("frame dimension mismatch");

    const double h = coord.h;
    if (evenness_ok) *evenness_ok = true;

    // Evenized evaluator on the sphere; identity elsewhere.
    auto feval = f.eval;
    if (space.curvature == Curvature::Spherical) {
        const auto base = f.eval;
        if (evenness_ok) {
            std::vector<double> dir(n, 0.0), mdir(n, 0.0);
            dir[0] = 0.6;
            dir[n - 1] = 0.8;
            for (int i = 0; i < n; ++i) mdir[i] = -dir[i];
            for (double t : {0.3, 0.9, 1.4}) {
                const double a = base(dir, t);
                const double b = base(mdir, kPi - t);
                if (std::fabs(a - b) > 1e-10 * (std::fabs(a) + std::fabs(b) + 1.0))
                    *evenness_ok = false;
            }
        }
        feval = [base, n](const std::vector<double>& w, double t) {
            std::vector<double> mw(w);
            for (auto& c : mw) c = -c;
            return 0.5 * (base(w, t) + base(mw, kPi - t));
        };
    }

    // Ambient direction for a cap point (sigma on S^(k-1), cosine c).
    std::vector<double> omega(n);
    auto direction = [&](const std::vector<double>& sigma, double c) -> const std::vector<double>& {
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int d = 0; d < n; ++d) {
            double acc = c * coord.frame[k][d];
            for (int i = 0; i < k; ++i)
                acc += s * sigma[i] * coord.frame[i][d];
            omega[d] = acc;
        }
        return omega;
    };

    const double edge = f.edge_exponent;
    const bool compact = std::isfinite(f.max_radius);
    if (compact && f.max_radius <= h)
        return 0.0;

    // Colatitude integral for one sigma node.
    auto colatitude_integral = [&](const std::vector<double>& sigma) -> double {
        switch (space.curvature) {
        case Curvature::Flat: {
            const Integrand g = [&](double u) {
                const auto& w = direction(sigma, u);
                return feval(w, h / u) * std::pow(h, k) / std::pow(u, k + 1) *
                       std::pow(1.0 - u * u, 0.5 * (k - 2.0));
            };
            const double eTop = 0.5 * (k - 2.0);
            if (compact) {
                const double uMin = h / f.max_radius;
                return integrate_endpoint_singular(g, uMin, 1.0, edge, eTop, quad);
            }
            // Split off the regular upper part, then walk to u -> 0.
            const double r1 =
                integrate_endpoint_singular(g, 0.5, 1.0, 0.0, eTop, quad);
            return r1 + integrate_toward_zero(g, 0.5, quad);
        }
        case Curvature::Spherical: {
            const double tanh_ = std::tan(h);
            const double coth2 = 1.0 / (tanh_ * tanh_);
            const double sinh_ = std::sin(h);
            // The half-geodesic parametrization covers each point of the
            // submanifold once per hemisphere; the factor 2 restores the
            // full-submanifold integral used by the radial formulas.
            const Integrand g = [&](double u) {
                const auto& w = direction(sigma, u);
                const double radius = std::atan(tanh_ / u);
                return 2.0 * feval(w, radius) *
                       std::pow(coth2 * u * u + 1.0, -0.5 * (k + 1.0)) / sinh_ *
                       std::pow(1.0 - u * u, 0.5 * (k - 2.0));
            };
            double uMin = 0.0;
            double eBot = edge;
            if (compact && f.max_radius < kPi / 2.0) {
                uMin = tanh_ / std::tan(f.max_radius);
                if (uMin >= 1.0) return 0.0;
            }
            return integrate_endpoint_singular(g, uMin, 1.0, eBot, 0.5 * (k - 2.0),
                                               quad);
        }
        case Curvature::Hyperbolic: {
            const double tau = std::tanh(h);
            const double ch = std::cosh(h);
            const double vMax = std::acosh(1.0 / tau);
            const Integrand g = [&](double v) {
                const double u = tau * std::cosh(v);
                const auto& w = direction(sigma, u);
                const double radius = std::atanh(1.0 / std::cosh(v));
                return feval(w, radius) *
                       std::pow(std::max(1.0 - u * u, 0.0), 0.5 * (k - 2.0)) /
                       (std::pow(std::sinh(v), k) * ch);
            };
            const double eTop = 0.5 * (k - 2.0); // at v = vMax, u -> 1
            if (compact) {
                const double vLo = std::acosh(1.0 / std::tanh(f.max_radius));
                if (vLo >= vMax) return 0.0;
                return integrate_endpoint_singular(g, vLo, vMax, edge, eTop, quad);
            }
            const double vMid = 0.5 * vMax;
            const double upper =
                integrate_endpoint_singular(g, vMid, vMax, 0.0, eTop, quad);
            return upper + integrate_toward_zero(g, vMid, quad);
        }
        }
        return 0.0;
    };

    double previous = 0.0;
    for (int level = 0;; ++level) {
        const auto rule = sphere_rule(k - 1, level);
        double total = 0.0;
        for (const auto& node : rule)
            total += node.w * colatitude_integral(node.x);
        if (k == 1)
            return total;
        if (level > 0 &&
            std::fabs(total - previous) <=
                std::max(quad.abs_tol, 10.0 * quad.rel_tol * std::fabs(total)))
            return total;
        if (level >= 3)
            return total;
        previous = total;
    }
}

} // namespace geoxform

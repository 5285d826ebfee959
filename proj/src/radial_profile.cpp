#include "geoxform/radial_profile.hpp"

#include <algorithm>
#include <cmath>

namespace geoxform {

namespace {
const double kPi = 3.14159265358979323846;
}

RadialProfile const_profile(double value) {
    RadialProfile f;
    f.eval = [value](double) { return value; };
    return f;
}

RadialProfile power_profile(const Space& space, Side side, double a, double b,
                            double sc_pow, double scp_pow) {
    if (!(a >= 0.0) || !(b > a))
        throw DomainError("power profile needs 0 <= a < b");
    RadialProfile f;
    f.t_lo = a;
    f.t_hi = b;
    const Curvature curv = space.curvature;
    if (curv == Curvature::Flat) {
        f.eval = [sc_pow](double t) { return std::pow(t, sc_pow); };
    } else if (side == Side::Ambient) {
        if (curv == Curvature::Hyperbolic) {
            // argument u = cosh d; sinh d = sqrt(u^2-1)
            f.eval = [sc_pow, scp_pow](double u) {
                return std::pow(std::max(u * u - 1.0, 0.0), 0.5 * sc_pow) *
                       std::pow(u, scp_pow);
            };
        } else {
            // argument u = cos d; sin d = sqrt(1-u^2)
            f.eval = [sc_pow, scp_pow](double u) {
                return std::pow(std::max(1.0 - u * u, 0.0), 0.5 * sc_pow) *
                       std::pow(u, scp_pow);
            };
        }
    } else {
        if (curv == Curvature::Hyperbolic) {
            // argument s = sinh d; cosh d = sqrt(1+s^2)
            f.eval = [sc_pow, scp_pow](double s) {
                return std::pow(s, sc_pow) * std::pow(1.0 + s * s, 0.5 * scp_pow);
            };
        } else {
            // argument s = sin d; cos d = sqrt(1-s^2)
            f.eval = [sc_pow, scp_pow](double s) {
                return std::pow(s, sc_pow) *
                       std::pow(std::max(1.0 - s * s, 0.0), 0.5 * scp_pow);
            };
        }
    }
    // Endpoint exponents in geodesic distance. s_c(t) ~ t at 0 and, on the
    // sphere, s_c'(t) ~ pi/2 - t at the equator.
    if (a == 0.0)
        f.e_lo = sc_pow;
    if (curv == Curvature::Spherical && std::fabs(b - kPi / 2.0) < 1e-14)
        f.e_hi = scp_pow;
    return f;
}

RadialProfile ball_profile(const Space& space, double lambda) {
    return power_profile(space, Side::Ambient, 0.0, lambda, 0.0, 0.0);
}

RadialProfile annulus_profile(const Space& space, double a, double b) {
    return power_profile(space, Side::Ambient, a, b, 0.0, 0.0);
}

RadialProfile truncate_profile(const RadialProfile& f, double cutoff) {
    RadialProfile g = f;
    g.t_hi = std::min(f.t_hi, cutoff);
    if (g.t_hi < f.t_hi)
        g.e_hi = 0.0; // sharp cut, no algebraic vanishing
    return g;
}

RadialProfile scale_profile(const RadialProfile& f, double factor) {
    RadialProfile g = f;
    auto inner = f.eval;
    g.eval = [inner, factor](double u) { return factor * inner(u); };
    return g;
}

RadialProfile table_profile(const Space& space, Side side,
                            const std::vector<std::pair<double, double>>& rows) {
    if (rows.size() < 2)
        throw DomainError("table profile needs at least two rows");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].first > rows[i - 1].first))
            throw DomainError("table profile rows must be strictly increasing in t");
    const Curvature curv = space.curvature;
    auto to_distance = [curv, side](double u) {
        if (curv == Curvature::Flat) return u;
        if (curv == Curvature::Hyperbolic)
            return side == Side::Ambient ? std::acosh(std::max(u, 1.0))
                                         : std::asinh(u);
        return side == Side::Ambient ? std::acos(std::clamp(u, -1.0, 1.0))
                                     : std::asin(std::clamp(u, 0.0, 1.0));
    };
    RadialProfile f;
    f.t_lo = rows.front().first;
    f.t_hi = rows.back().first;
    f.eval = [rows, to_distance](double u) {
        const double t = to_distance(u);
        auto it = std::lower_bound(rows.begin(), rows.end(), t,
                                   [](const auto& r, double v) { return r.first < v; });
        if (it == rows.begin()) return rows.front().second;
        if (it == rows.end()) return rows.back().second;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (t - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    };
    return f;
}

} // namespace geoxform

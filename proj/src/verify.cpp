#include "geoxform/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "geoxform/hyperfunc.hpp"

namespace geoxform {

namespace {

const double kPi = 3.14159265358979323846;

bool approx(double x, double y, double tol = 1e-9) {
    return std::fabs(x - y) <= tol * std::max({1.0, std::fabs(x), std::fabs(y)});
}

// Existence of the transform on the weighted space (iff-form).
bool exists_hn(int n, int k, double a1, double a2, double p) {
    if (p < 1.0) return false;
    const double sum = a1 + a2;
    if (approx(sum, k - n)) return approx(p, 1.0);
    if (sum < k - n) return false;
    if (k == 1) return true;
    return p < (sum + n - 1.0) / (k - 1.0) && !approx(p, (sum + n - 1.0) / (k - 1.0));
}

bool exists_rn(int n, int k, double alpha, double p) {
    if (p < 1.0) return false;
    if (approx(alpha, k - n)) return approx(p, 1.0);
    if (alpha < k - n) return false;
    return p < (alpha + n) / k && !approx(p, (alpha + n) / k);
}

bool exists_sn(double a2, double p) {
    if (p < 1.0) return false;
    if (a2 > 0.0 && !approx(a2, 0.0))
        return p > 1.0 + a2 && !approx(p, 1.0 + a2);
    return true;
}

void flag_if(std::vector<std::string>& flags, bool cond, const char* name) {
    if (cond) flags.push_back(name);
}

} // namespace

const char* inequality_name(Inequality id) {
    switch (id) {
    case Inequality::ExistenceHn: return "existence-hn";
    case Inequality::ExistenceSn: return "existence-sn";
    case Inequality::RnLpLinf: return "rn-lp-linf";
    case Inequality::HnLpLr: return "hn-lp-lr";
    case Inequality::HnLpLinf: return "hn-lp-linf";
    case Inequality::SnLpLr: return "sn-lp-lr";
    case Inequality::SnLpLinf: return "sn-lp-linf";
    case Inequality::HnLpLp: return "hn-lp-lp";
    case Inequality::SnLpLp: return "sn-lp-lp";
    case Inequality::RnLpLp: return "rn-lp-lp";
    case Inequality::EndpointHnGamma: return "endpoint-hn-gamma";
    case Inequality::EndpointHnMixed: return "endpoint-hn-mixed";
    case Inequality::EndpointSnGamma: return "endpoint-sn-gamma";
    case Inequality::EndpointSnMixed: return "endpoint-sn-mixed";
    }
    return "unknown";
}

bool inequality_from_name(const std::string& name, Inequality* out) {
    for (int i = 0; i <= static_cast<int>(Inequality::EndpointSnMixed); ++i) {
        const auto id = static_cast<Inequality>(i);
        if (name == inequality_name(id)) {
            *out = id;
            return true;
        }
    }
    return false;
}

ConditionReport condition_check(Inequality id, const ConditionInputs& in) {
    ConditionReport rep;
    rep.id = id;
    rep.in = in;
    const int n = in.n, k = in.k;
    if (n < 2 || k < 1 || k > n - 1)
        throw DomainError("need n >= 2 and 1 <= k <= n-1");
    auto& flags = rep.endpoint_flags;

    switch (id) {
    case Inequality::ExistenceHn: {
        rep.rules = {"hn-existence-region"};
        rep.necessary_ok = exists_hn(n, k, in.a1, in.a2, in.p);
        rep.sufficient_ok = rep.necessary_ok;
        if (k > 1)
            flag_if(flags, approx(in.p, (in.a1 + in.a2 + n - 1.0) / (k - 1.0)),
                    "p at existence endpoint");
        flag_if(flags, approx(in.a1 + in.a2, k - n), "alpha sum at k-n");
        break;
    }
    case Inequality::ExistenceSn: {
        rep.rules = {"sn-existence-region"};
        rep.necessary_ok = exists_sn(in.a2, in.p);
        rep.sufficient_ok = rep.necessary_ok;
        flag_if(flags, approx(in.p, 1.0 + in.a2), "p at 1+alpha2");
        break;
    }
    case Inequality::RnLpLinf: {
        rep.rules = {"rn-lp-linf-scaling", "rn-lp-linf-sufficiency"};
        const bool standing = exists_rn(n, k, in.a1, in.p);
        const double target = (in.a1 + n) / in.p - k;
        rep.necessary_ok = standing && approx(in.b1, target);
        rep.sufficient_ok = rep.necessary_ok && (k >= 2 || in.p > 2.0);
        flag_if(flags, k == 1 && approx(in.p, 2.0), "p at 2 for the x-ray case");
        break;
    }
    case Inequality::HnLpLr: {
        rep.rules = {"hn-lp-lr-necessary", "hn-lp-lr-sufficiency"};
        const bool standing = exists_hn(n, k, in.a1, in.a2, in.p) && in.r >= in.p;
        const double mid = (in.a1 + n) / in.p - (in.b1 + n - k) / in.r;
        const double low = (in.b2 + k - 1.0) / in.r - (in.a2 - 1.0) / in.p;
        rep.necessary_ok = standing && in.b1 > k - n && low <= mid && mid <= k;
        bool xray_ok = true;
        if (k == 1)
            xray_ok = (in.p > 1.0) ? (1.0 / in.p - 1.0 / in.r <= 0.5)
                                   : (in.r < 2.0);
        rep.sufficient_ok = rep.necessary_ok && xray_ok;
        flag_if(flags, approx(mid, k), "beta1 at the lower edge");
        flag_if(flags, approx(low, mid), "beta1 at the upper edge");
        flag_if(flags, k == 1 && approx(1.0 / in.p - 1.0 / in.r, 0.5),
                "1/p - 1/r at 1/2");
        break;
    }
    case Inequality::HnLpLinf: {
        rep.rules = {"hn-lp-linf-necessary", "hn-lp-linf-sufficiency"};
        const bool standing = exists_hn(n, k, in.a1, in.a2, in.p);
        const double g1min = std::max(0.0, (in.a1 + n) / in.p - k);
        const double gsum = (in.a1 + in.a2 + n - 1.0) / in.p;
        rep.necessary_ok = standing && in.g1 >= g1min && in.g1 + in.g2 <= gsum;
        const bool logcase = approx(in.p, (in.a1 + n) / k);
        rep.sufficient_ok = rep.necessary_ok && (!logcase || in.g1 > 0.0) &&
                            (k >= 2 || in.p > 2.0);
        flag_if(flags, logcase, "p at (alpha1+n)/k");
        flag_if(flags, approx(in.g1 + in.g2, gsum), "gamma sum at the edge");
        break;
    }
    case Inequality::SnLpLr: {
        rep.rules = {"sn-lp-lr-necessary", "sn-lp-lr-sufficiency"};
        const bool standing = exists_sn(in.a2, in.p) && in.r >= in.p;
        const double mid = (in.a1 + n) / in.p - (in.b1 + n - k) / in.r;
        const double lhs = (in.b2 + k + 1.0) / in.r;
        const double rhs = (in.a2 + 1.0) / in.p;
        const bool atEdge = approx(in.p, 1.0 + in.a2);
        const bool b2ok = atEdge ? (lhs > rhs && !approx(lhs, rhs)) : (lhs >= rhs);
        rep.necessary_ok = standing && in.b1 > k - n && mid <= k && b2ok;
        bool xray_ok = true;
        if (k == 1)
            xray_ok = (in.p > 1.0) ? (1.0 / in.p - 1.0 / in.r <= 0.5)
                                   : (in.r < 2.0);
        rep.sufficient_ok = rep.necessary_ok && xray_ok;
        flag_if(flags, approx(mid, k), "beta1 at the edge");
        flag_if(flags, approx(lhs, rhs), "beta2 at the edge");
        flag_if(flags, atEdge, "p at 1+alpha2");
        break;
    }
    case Inequality::SnLpLinf: {
        rep.rules = {"sn-lp-linf-necessary", "sn-lp-linf-sufficiency"};
        const bool standing = exists_sn(in.a2, in.p);
        const double g1min = std::max(0.0, (in.a1 + n) / in.p - k);
        const double g2min = (1.0 + in.a2) / in.p;
        rep.necessary_ok = standing && in.g1 >= g1min && in.g2 >= g2min;
        const bool logcase = approx(in.p, (in.a1 + n) / k);
        rep.sufficient_ok = rep.necessary_ok && (!logcase || in.g1 > 0.0) &&
                            (k >= 2 || in.p > 2.0);
        flag_if(flags, logcase, "p at (alpha1+n)/k");
        flag_if(flags, approx(in.g2, g2min), "gamma2 at the edge");
        break;
    }
    case Inequality::HnLpLp: {
        rep.rules = {"hn-lp-lp-necessary", "hn-lp-lp-sufficiency"};
        const bool standing = exists_hn(n, k, in.a1, in.a2, in.p);
        const double mid = in.a1 - in.b1;
        rep.necessary_ok = standing && in.b1 > k - n && in.b2 - in.a2 <= mid &&
                           mid <= k * (in.p - 1.0);
        rep.sufficient_ok = rep.necessary_ok &&
                            in.p <= (in.a1 + in.a2 + n + 1.0) / (k + 1.0) &&
                            in.b1 + in.b2 < in.p * (k + 1.0) - (n + 1.0);
        flag_if(flags, approx(mid, k * (in.p - 1.0)), "beta1 at the lower edge");
        flag_if(flags, approx(in.p, (in.a1 + in.a2 + n + 1.0) / (k + 1.0)),
                "p at the sufficiency edge");
        break;
    }
    case Inequality::SnLpLp: {
        rep.rules = {"sn-lp-lp-region"};
        const bool standing = exists_sn(in.a2, in.p);
        const bool atEdge = approx(in.p, 1.0 + in.a2);
        const double b2min = in.a2 - k;
        const bool b2ok = atEdge ? (in.b2 > b2min && !approx(in.b2, b2min))
                                 : (in.b2 >= b2min);
        rep.necessary_ok = standing && in.b1 > k - n &&
                           in.b1 >= in.a1 - k * (in.p - 1.0) && b2ok;
        rep.sufficient_ok = rep.necessary_ok;
        flag_if(flags, approx(in.b1, in.a1 - k * (in.p - 1.0)), "beta1 at the edge");
        flag_if(flags, approx(in.b2, b2min), "beta2 at the edge");
        break;
    }
    case Inequality::RnLpLp: {
        rep.rules = {"rn-lp-lp-region"};
        const bool standing = exists_rn(n, k, in.a1, in.p) && in.b1 > k - n;
        rep.necessary_ok = standing && approx(in.b1, in.a1 - k * (in.p - 1.0));
        rep.sufficient_ok = rep.necessary_ok;
        break;
    }
    case Inequality::EndpointHnGamma: {
        rep.rules = {"endpoint-hn-gamma-region"};
        const bool onLine = approx(in.p, (in.a1 + n) / k);
        const bool standing = onLine && exists_hn(n, k, in.a1, in.a2, in.p);
        const double gmax = (in.a1 + in.a2 + n - 1.0) / in.p;
        rep.necessary_ok = standing && in.g <= gmax;
        rep.sufficient_ok = rep.necessary_ok && (k >= 2 || in.p >= 2.0);
        flag_if(flags, approx(in.g, gmax), "gamma at the edge");
        break;
    }
    case Inequality::EndpointHnMixed: {
        rep.rules = {"endpoint-hn-mixed-region"};
        const bool standing = k >= 2 && in.a1 + in.a2 > k - n &&
                              approx(in.p, (in.a1 + in.a2 + n - 1.0) / (k - 1.0)) &&
                              in.p > 1.0;
        const double g1min = std::max(0.0, (in.a1 + n) / in.p - k);
        rep.necessary_ok = standing && in.g1 >= g1min && in.g1 + in.g2 <= k - 1.0;
        rep.sufficient_ok = rep.necessary_ok;
        flag_if(flags, approx(in.g1 + in.g2, k - 1.0), "gamma sum at the edge");
        break;
    }
    case Inequality::EndpointSnGamma: {
        rep.rules = {"endpoint-sn-gamma-region"};
        const bool onLine = approx(in.p, (in.a1 + n) / k);
        bool standing = onLine && in.a1 >= k - n && in.p >= 1.0;
        if (in.a2 > 0.0)
            standing = standing && in.p > 1.0 + in.a2;
        else
            standing = standing && in.p >= 1.0 + in.a2;
        const double gmin = (1.0 + in.a2) / in.p;
        rep.necessary_ok = standing && in.g >= gmin;
        rep.sufficient_ok = rep.necessary_ok && (k >= 2 || in.p >= 2.0);
        flag_if(flags, approx(in.g, gmin), "gamma at the edge");
        break;
    }
    case Inequality::EndpointSnMixed: {
        rep.rules = {"endpoint-sn-mixed-region"};
        const bool standing = in.a2 > 0.0 && approx(in.p, 1.0 + in.a2);
        const double g1min = std::max(0.0, (in.a1 + n) / in.p - k);
        rep.necessary_ok = standing && in.g1 >= g1min && in.g2 >= 1.0;
        rep.sufficient_ok = rep.necessary_ok && (k >= 2 || in.p >= 2.0);
        flag_if(flags, approx(in.g2, 1.0), "gamma2 at the edge");
        break;
    }
    }
    if (rep.sufficient_ok && !rep.necessary_ok)
        throw Error("harness bug: sufficient set escaped the necessary set");
    return rep;
}

// ---------------------------------------------------------------------------
// Probe families and ratio probes
// ---------------------------------------------------------------------------

RadialProfile probe_family_profile(ProbeFamilyId id, const Space& space,
                                   const ConditionInputs& in, double lam) {
    switch (id) {
    case ProbeFamilyId::RnBall:
        return ball_profile(space, lam);
    case ProbeFamilyId::RnAnnulus:
        return annulus_profile(space, lam, 2.0 * lam);
    case ProbeFamilyId::HnBallCosh:
        return power_profile(space, Side::Ambient, 0.0, lam, 0.0, 1.0);
    case ProbeFamilyId::HnBallSinhCosh:
        return power_profile(space, Side::Ambient, 0.0, lam, -in.a1 / in.p, 1.0);
    case ProbeFamilyId::HnDoubleAnnulus:
        return annulus_profile(space, std::acosh(lam), std::acosh(2.0 * lam));
    case ProbeFamilyId::SnBallCos:
        return power_profile(space, Side::Ambient, 0.0, lam, 0.0, 1.0);
    case ProbeFamilyId::SnBallCosSinPow:
        return power_profile(space, Side::Ambient, 0.0, lam, -in.a1 / in.p, 1.0);
    case ProbeFamilyId::SnEquatorCos:
        return power_profile(space, Side::Ambient, lam, kPi / 2.0, 0.0, 1.0);
    case ProbeFamilyId::SnEquatorCosPow:
        return power_profile(space, Side::Ambient, lam, kPi / 2.0, 0.0,
                             1.0 - in.a2 / in.p);
    case ProbeFamilyId::SnDoubleAnnulus:
        return annulus_profile(space, std::acos(2.0 * lam), std::acos(lam));
    case ProbeFamilyId::SnAnnulusNearZero:
        return annulus_profile(space, lam, 2.0 * lam);
    }
    throw DomainError("unknown probe family");
}

namespace {

Space probe_space(ProbeFamilyId id, int n) {
    switch (id) {
    case ProbeFamilyId::RnBall:
    case ProbeFamilyId::RnAnnulus:
        return flat(n);
    case ProbeFamilyId::HnBallCosh:
    case ProbeFamilyId::HnBallSinhCosh:
    case ProbeFamilyId::HnDoubleAnnulus:
        return hyperbolic(n);
    default:
        return spherical(n);
    }
}

bool is_sup_norm_id(Inequality id) {
    switch (id) {
    case Inequality::RnLpLinf:
    case Inequality::HnLpLinf:
    case Inequality::SnLpLinf:
    case Inequality::EndpointHnGamma:
    case Inequality::EndpointHnMixed:
    case Inequality::EndpointSnGamma:
    case Inequality::EndpointSnMixed:
        return true;
    default:
        return false;
    }
}

double witness_distance(ProbeFamilyId id, const Space& space, double lam) {
    switch (id) {
    case ProbeFamilyId::RnBall:
        return lam / std::sqrt(2.0);
    case ProbeFamilyId::HnBallCosh:
    case ProbeFamilyId::HnBallSinhCosh:
        return std::asinh(std::sinh(lam) / std::sqrt(2.0));
    case ProbeFamilyId::SnBallCos:
    case ProbeFamilyId::SnBallCosSinPow:
        return std::asin(std::sin(lam) / std::sqrt(2.0));
    case ProbeFamilyId::SnEquatorCos:
    case ProbeFamilyId::SnEquatorCosPow:
        return lam;
    case ProbeFamilyId::RnAnnulus:
    case ProbeFamilyId::SnAnnulusNearZero:
        return lam;
    case ProbeFamilyId::HnDoubleAnnulus:
        return std::acosh(lam);
    case ProbeFamilyId::SnDoubleAnnulus:
        return std::acos(2.0 * lam);
    }
    (void)space;
    return lam;
}

double sup_weight(const Space& space, const ConditionInputs& in, Inequality id,
                  double d) {
    switch (space.curvature) {
    case Curvature::Flat:
        return std::pow(d, in.b1);
    case Curvature::Hyperbolic: {
        const double g1 = (id == Inequality::EndpointHnGamma) ? 0.0 : in.g1;
        const double g2 = (id == Inequality::EndpointHnGamma) ? in.g : in.g2;
        return std::pow(std::sinh(d), g1) * std::pow(std::cosh(d), g2);
    }
    case Curvature::Spherical: {
        const double g1 = (id == Inequality::EndpointSnGamma) ? 0.0 : in.g1;
        const double g2 = (id == Inequality::EndpointSnGamma) ? in.g : in.g2;
        return std::pow(std::sin(d), g1) * std::pow(std::cos(d), g2);
    }
    }
    return 1.0;
}

} // namespace

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m < 2)
        throw DomainError("slope fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

RatioProbeResult ratio_probe(Inequality id, const ConditionInputs& in,
                             const ProbeFamily& family, const QuadratureSpec& quad) {
    if (family.parameter_grid.size() < 2)
        throw DomainError("probe grid needs at least two parameters");
    const Space space = probe_space(family.id, in.n);
    const int k = in.k;
    RatioProbeResult out;

    for (double lam : family.parameter_grid) {
        const RadialProfile f = probe_family_profile(family.id, space, in, lam);
        const WeightConfig src{in.a1, in.a2, in.p};
        const double source = lp_norm_radial(space, f, src, quad);
        double target;
        if (is_sup_norm_id(id)) {
            const double d = witness_distance(family.id, space, lam);
            target = sup_weight(space, in, id, d) *
                     kplane_radial(space, k, f, d, quad);
        } else {
            const double rr = (id == Inequality::HnLpLp ||
                               id == Inequality::SnLpLp || id == Inequality::RnLpLp)
                                  ? in.p
                                  : in.r;
            const WeightConfig dst{in.b1, in.b2, rr};
            try {
                target = lr_norm_transform(space, k, f, dst, quad);
            } catch (const DivergentNorm&) {
                target = std::numeric_limits<double>::infinity();
            }
        }
        out.lambdas.push_back(lam);
        out.ratios.push_back(target / source);
    }

    out.sup_ratio = 0.0;
    for (double r : out.ratios)
        out.sup_ratio = std::max(out.sup_ratio, r);

    // Regime windows: lam <= 1/4 is "small"; lam >= 4 is "large" on the
    // hyperbolic side, and cos(lam) <= 1/8 near the spherical equator.
    std::vector<double> xsmall, ysmall, xlarge, ylarge;
    const bool sphere = space.curvature == Curvature::Spherical;
    for (std::size_t i = 0; i < out.lambdas.size(); ++i) {
        const double lam = out.lambdas[i];
        const double ratio = out.ratios[i];
        if (!std::isfinite(ratio))
            continue;
        if (lam <= 0.25 + 1e-12) {
            xsmall.push_back(std::log(lam));
            ysmall.push_back(std::log(ratio));
        }
        if (!sphere && lam >= 4.0 - 1e-12) {
            xlarge.push_back(lam);
            ylarge.push_back(std::log(ratio));
        }
        if (sphere && std::cos(lam) <= 0.125 + 1e-12) {
            xlarge.push_back(std::log(std::cos(lam)));
            ylarge.push_back(std::log(ratio));
        }
    }
    out.slope_small = xsmall.size() >= 2 ? fit_slope(xsmall, ysmall) : 0.0;
    out.slope_large = xlarge.size() >= 2 ? fit_slope(xlarge, ylarge) : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Counterexample blow-up probes
// ---------------------------------------------------------------------------

const char* counterexample_name(CounterexampleId id) {
    switch (id) {
    case CounterexampleId::Hn1: return "hn-existence-boundary";
    case CounterexampleId::Hn2: return "hn-weight-sum-boundary";
    case CounterexampleId::Sn: return "sn-secant";
    case CounterexampleId::Sn2: return "sn-secant-log";
    case CounterexampleId::RnAnnulusK1: return "rn-annulus-xray";
    case CounterexampleId::HnAnnulusK1: return "hn-annulus-xray";
    case CounterexampleId::SnAnnulusK1: return "sn-annulus-xray";
    }
    return "unknown";
}

namespace {

// log-safe helpers for very large canonical arguments
double log_sq_minus_one(double u) { // ln(u^2-1), u > 1
    return 2.0 * std::log(u) + std::log1p(-1.0 / (u * u));
}
double log_one_plus(double u) { // ln(1+u)
    return std::log(u) + std::log1p(1.0 / u);
}

// Truncated source-norm computation via a numeric head and a power tail:
// integral_a^inf g(u) du with g ~ coeff * u^(-s) towards infinity.
double head_plus_power_tail(const Integrand& g, double a, double s, double coeff,
                            const QuadratureSpec& quad, double head) {
    const double U = a + head;
    return integrate(g, a, U, quad) + coeff * std::pow(U, 1.0 - s) / (s - 1.0);
}

} // namespace

BlowupResult blowup_probe(CounterexampleId id, const BlowupParams& prm,
                          const std::vector<double>& grid,
                          const QuadratureSpec& quad) {
    if (grid.size() < 6)
        throw DomainError("blow-up grid needs at least 6 entries");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("blow-up grid must be increasing");
    const int n = prm.n, k = prm.k;
    if (n < 2 || k < 1 || k > n - 1)
        throw DomainError("need n >= 2 and 1 <= k <= n-1");
    BlowupResult out;
    const double surf = sphere_area(n - 1);

    switch (id) {
    case CounterexampleId::Hn1: {
        if (k < 2)
            throw DomainError("this regime needs k >= 2");
        const double boundary = (prm.a1 + prm.a2 + n - 1.0) / (k - 1.0);
        if (!(prm.p >= boundary && boundary > 1.0))
            throw DomainError("regime requires p >= (a1+a2+n-1)/(k-1) > 1");
        const double e1 = (2.0 - n - prm.a1) / (2.0 * prm.p);
        const double e2 = -prm.a2 / prm.p;
        const double e3 = -1.0 / prm.p;
        RadialProfile f;
        f.eval = [e1, e2, e3](double u) {
            const double lu = std::log(u);
            const double l1p = log_one_plus(u);
            return std::exp(e1 * log_sq_minus_one(u) + e2 * lu + e3 * l1p) / l1p;
        };
        f.e_lo = 2.0 * e1;
        // source norm: exact log substitution with a power tail in u
        const double s = prm.p;
        const Integrand g = [s](double u) { return std::pow(u, -s); };
        const double ip = head_plus_power_tail(g, std::log(2.0), s, 1.0, quad, 60.0);
        const double ip2 = head_plus_power_tail(g, std::log(2.0), s, 1.0, quad, 120.0);
        out.source_norm = std::pow(surf * ip, 1.0 / prm.p);
        out.source_change = std::fabs(ip2 - ip) / ip;
        const Space space = hyperbolic(n);
        for (double T : grid)
            out.values.push_back(
                kplane_radial(space, k, truncate_profile(f, T), prm.witness, quad));
        break;
    }
    case CounterexampleId::Hn2: {
        if (k < 2)
            throw DomainError("this regime needs k >= 2");
        const bool boundary_sum = std::fabs(prm.a1 + prm.a2 - (k - n)) < 1e-12;
        if (!(prm.a1 + prm.a2 < k - n || (boundary_sum && prm.p > 1.0)))
            throw DomainError("regime requires a1+a2 < k-n, or = with p > 1");
        const double e1 = -prm.a1 / (2.0 * prm.p);
        const double e2 = (1.0 - prm.a2) / prm.p;
        const double np = n / prm.p;
        const double lexp = 1.0 + 1.0 / prm.p;
        RadialProfile f;
        f.eval = [e1, e2, np, lexp](double u) {
            const double ls = 0.5 * log_sq_minus_one(u); // ln sinh d
            const double sd = std::exp(ls);
            const double l2s = (sd > 1e8) ? ls + std::log1p(2.0 / sd)
                                          : std::log(2.0 + sd);
            return std::exp(2.0 * e1 * ls + e2 * std::log(u) - np * l2s -
                            lexp * std::log(l2s));
        };
        f.e_lo = 2.0 * e1;
        // source: integral of (1-2e^-u)^(n-1) u^(-p-1) from ln 2
        const double s = prm.p + 1.0;
        const Integrand gs = [n, s](double u) {
            return std::pow(1.0 - 2.0 * std::exp(-u), n - 1.0) * std::pow(u, -s);
        };
        const double ip = head_plus_power_tail(gs, std::log(2.0), s, 1.0, quad, 60.0);
        const double ip2 = head_plus_power_tail(gs, std::log(2.0), s, 1.0, quad, 120.0);
        out.source_norm = std::pow(surf * ip, 1.0 / prm.p);
        out.source_change = std::fabs(ip2 - ip) / ip;
        const Space space = hyperbolic(n);
        for (double T : grid)
            out.values.push_back(
                kplane_radial(space, k, truncate_profile(f, T), prm.witness, quad));
        break;
    }
    case CounterexampleId::Sn: {
        if (!(prm.a2 > 0.0 && prm.p >= 1.0 && prm.p < 1.0 + prm.a2))
            throw DomainError("regime requires a2 > 0 and 1 <= p < 1+a2");
        const double epow = -prm.a1 / (2.0 * prm.p);
        // source: exact beta integral
        const double ib = 0.5 * gamma_fn(0.5 * n) *
                          gamma_fn(0.5 * (prm.a2 - prm.p + 1.0)) /
                          gamma_fn(0.5 * (n + prm.a2 - prm.p + 1.0));
        out.source_norm = std::pow(2.0 * surf * ib, 1.0 / prm.p);
        out.source_change = 0.0; // closed form
        // target: truncated transform in the w = ln(1/cos t) variable
        const double h = std::min(prm.witness, 1.2);
        const double C = std::cos(h);
        const double pref = 2.0 * sphere_area(k - 1) / std::pow(C, k - 1.0);
        const double wLo = std::log(1.0 / C);
        const double ex = 0.5 * k - 1.0;
        const Integrand g = [epow, C, ex](double w) {
            const double u2 = std::exp(-2.0 * w);
            return std::pow(-std::expm1(-2.0 * w), epow) *
                   std::pow(C * C - u2, ex);
        };
        for (double T : grid) {
            const double W = wLo + T * std::log(2.0);
            out.values.push_back(
                pref * integrate_endpoint_singular(g, wLo, W, ex, 0.0, quad));
        }
        break;
    }
    case CounterexampleId::Sn2: {
        if (!(prm.a2 > 0.0 && std::fabs(prm.p - (1.0 + prm.a2)) < 1e-9))
            throw DomainError("regime requires p = 1+a2 with a2 > 0");
        if (!(prm.gamma > 1.0 / prm.p && prm.gamma <= 1.0))
            throw DomainError("regime requires 1/p < gamma <= 1");
        const double epow = -prm.a1 / (2.0 * prm.p);
        const double gamma = prm.gamma;
        // source: (1/2) (1-e^-v)^(n/2-1) (v/2)^(-p gamma) from ln 2
        const double s = prm.p * gamma;
        const Integrand gs = [n, s](double v) {
            return 0.5 * std::pow(-std::expm1(-v), 0.5 * n - 1.0) *
                   std::pow(0.5 * v, -s);
        };
        const double coeff = 0.5 * std::pow(0.5, -s);
        const double ip = head_plus_power_tail(gs, std::log(2.0), s, coeff, quad, 60.0);
        const double ip2 =
            head_plus_power_tail(gs, std::log(2.0), s, coeff, quad, 120.0);
        out.source_norm = std::pow(2.0 * surf * ip, 1.0 / prm.p);
        out.source_change = std::fabs(ip2 - ip) / ip;
        const double h = std::min(prm.witness, kPi / 4.0);
        const double C = std::cos(h);
        const double pref = 2.0 * sphere_area(k - 1) / std::pow(C, k - 1.0);
        const double wLo = std::max(std::log(1.0 / C), std::log(std::sqrt(2.0)));
        const double ex = 0.5 * k - 1.0;
        const bool kernelEdge = std::log(1.0 / C) >= std::log(std::sqrt(2.0));
        const Integrand g = [epow, gamma, C, ex](double w) {
            const double u2 = std::exp(-2.0 * w);
            return std::pow(-std::expm1(-2.0 * w), epow) *
                   std::pow(C * C - u2, ex) * std::pow(w, -gamma);
        };
        for (double T : grid) {
            const double W = wLo + T * std::log(2.0);
            out.values.push_back(pref * integrate_endpoint_singular(
                                            g, wLo, W, kernelEdge ? ex : 0.0, 0.0,
                                            quad));
        }
        break;
    }
    case CounterexampleId::RnAnnulusK1: {
        if (!(prm.p < 2.0 && prm.p >= 1.0))
            throw DomainError("regime requires 1 <= p < 2");
        const Space space = flat(n);
        const double a = prm.a;
        const WeightConfig w{prm.a1, 0.0, prm.p};
        double src = 0.0;
        for (double j : grid) {
            const double b = a * (1.0 + std::pow(2.0, -j));
            const RadialProfile chi = annulus_profile(space, a, b);
            src = lp_norm_radial(space, chi, w, quad);
            const double top =
                std::pow(a, prm.beta) * kplane_char_interval(space, 1, a, b, a);
            out.values.push_back(std::pow(top / src, prm.p));
        }
        out.source_norm = src;
        out.source_change = 0.0;
        break;
    }
    case CounterexampleId::HnAnnulusK1: {
        if (!(prm.p < 2.0 && prm.p >= 1.0))
            throw DomainError("regime requires 1 <= p < 2");
        const Space space = hyperbolic(n);
        const double a = std::max(prm.a, 1.0 + 1e-6); // in cosh units
        const WeightConfig w{prm.a1, prm.a2, prm.p};
        const double d0 = std::acosh(a);
        double src = 0.0;
        for (double j : grid) {
            const double b = a * (1.0 + std::pow(2.0, -j));
            const RadialProfile chi =
                annulus_profile(space, d0, std::acosh(b));
            src = lp_norm_radial(space, chi, w, quad);
            const double weight = std::pow(std::sinh(d0), prm.g1) *
                                  std::pow(std::cosh(d0), prm.g2);
            const double top =
                weight * kplane_char_interval(space, 1, d0, std::acosh(b), d0);
            out.values.push_back(std::pow(top / src, prm.p));
        }
        out.source_norm = src;
        out.source_change = 0.0;
        break;
    }
    case CounterexampleId::SnAnnulusK1: {
        if (!(prm.p < 2.0 && prm.p >= 1.0))
            throw DomainError("regime requires 1 <= p < 2");
        const Space space = spherical(n);
        const double a = std::min(prm.a, 0.6); // in cos units
        const WeightConfig w{prm.a1, prm.a2, prm.p};
        double src = 0.0;
        for (double j : grid) {
            const double b = std::min(a * (1.0 + std::pow(2.0, -j)), 0.999);
            const double dIn = std::acos(b);
            const double dOut = std::acos(a);
            const RadialProfile chi = annulus_profile(space, dIn, dOut);
            src = lp_norm_radial(space, chi, w, quad);
            const double weight = std::pow(std::sin(dIn), prm.g1) *
                                  std::pow(std::cos(dIn), prm.g2);
            const double top =
                weight * kplane_char_interval(space, 1, dIn, dOut, dIn);
            out.values.push_back(std::pow(top / src, prm.p));
        }
        out.source_norm = src;
        out.source_change = 0.0;
        break;
    }
    }
    out.verdict = growth_verdict(out.values);
    return out;
}

// ---------------------------------------------------------------------------
// Endpoint Lorentz probes
// ---------------------------------------------------------------------------

EndpointProbeResult endpoint_lorentz_probe(Inequality id, const ConditionInputs& in,
                                           int count, unsigned long long seed,
                                           const QuadratureSpec& quad) {
    const bool hn =
        id == Inequality::EndpointHnGamma || id == Inequality::EndpointHnMixed;
    const bool sn =
        id == Inequality::EndpointSnGamma || id == Inequality::EndpointSnMixed;
    if (!hn && !sn)
        throw DomainError("endpoint probe expects an endpoint inequality id");
    const Space space = hn ? hyperbolic(in.n) : spherical(in.n);
    const int k = in.k;
    const double hmax = hn ? 4.0 : kPi / 2.0 - 0.01;
    const WeightConfig w{in.a1, in.a2, in.p};

    auto weighted_sup = [&](const LayeredRadialSet& set) {
        std::vector<double> hs;
        for (const auto& [a, b] : set.layers) {
            for (double d : {1e-4, 1e-3, 1e-2, 5e-2}) {
                hs.push_back(std::max(0.0, a - d));
                hs.push_back(a + d * (b - a));
                hs.push_back(std::max(0.0, b - d * (b - a)));
            }
            hs.push_back(0.5 * (a + b));
        }
        for (int i = 0; i < 64; ++i)
            hs.push_back(hmax * (i + 0.5) / 64.0);
        for (int i = 1; i <= 10; ++i)
            hs.push_back(hmax * std::pow(2.0, -i));
        double sup = 0.0;
        for (double h : hs) {
            if (!(h >= 0.0) || h >= hmax) continue;
            double R = 0.0;
            for (const auto& [a, b] : set.layers)
                R += kplane_char_interval(space, k, a, b, h);
            const double v = sup_weight(space, in, id, h) * R;
            if (std::isfinite(v)) sup = std::max(sup, v);
        }
        return sup;
    };

    EndpointProbeResult out;
    const ConditionReport rep = condition_check(id, in);
    if (rep.necessary_ok) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.01, hmax * 0.99);
        std::uniform_int_distribution<int> nl(1, 5);
        double sup = 0.0, supHalf = 0.0;
        for (int i = 0; i < count; ++i) {
            const int layers = nl(rng);
            std::vector<double> edges(2 * layers);
            for (auto& e : edges) e = uni(rng);
            std::sort(edges.begin(), edges.end());
            std::vector<std::pair<double, double>> ls;
            for (int j = 0; j < layers; ++j) {
                if (edges[2 * j + 1] - edges[2 * j] < 1e-6) continue;
                ls.emplace_back(edges[2 * j], edges[2 * j + 1]);
            }
            if (ls.empty()) continue;
            const LayeredRadialSet set(ls);
            const double ratio =
                weighted_sup(set) / lorentz_p1_norm(space, set, w, quad);
            sup = std::max(sup, ratio);
            if (i < count / 2) supHalf = std::max(supHalf, ratio);
        }
        out.empirical_sup = sup;
        out.empirical_sup_half = supHalf;
        out.stable = std::fabs(sup - supHalf) <= 0.10 * sup;
        return out;
    }

    // Weights beyond the threshold: the double-annulus family.
    out.ran_family_sweep = true;
    for (int j = 0; j < 6; ++j) {
        LayeredRadialSet set;
        if (hn) {
            const double a = std::pow(2.0, 1 + j); // in cosh units
            set = LayeredRadialSet({{std::acosh(a), std::acosh(2.0 * a)}});
        } else {
            const double a = std::pow(2.0, -2 - j); // in cos units
            set = LayeredRadialSet({{std::acos(2.0 * a), std::acos(a)}});
        }
        out.family_ratios.push_back(weighted_sup(set) /
                                    lorentz_p1_norm(space, set, w, quad));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lemma suites
// ---------------------------------------------------------------------------

const char* lemma_name(LemmaId id) {
    switch (id) {
    case LemmaId::AnnulusAlternating: return "annulus-alternating";
    case LemmaId::PowerWeighted: return "power-weighted";
    case LemmaId::ExpWeighted: return "exp-weighted";
    case LemmaId::PolyWeighted: return "poly-weighted";
    case LemmaId::HyperbolicCosh: return "hyperbolic-cosh";
    case LemmaId::SphereSinCos: return "sphere-sin-cos";
    }
    return "unknown";
}

namespace {

std::vector<std::pair<double, double>> random_layers(std::mt19937_64& rng, double lo,
                                                     double hi, int maxLayers) {
    std::uniform_int_distribution<int> nl(1, maxLayers);
    std::uniform_real_distribution<double> uni(lo, hi);
    const int layers = nl(rng);
    std::vector<double> edges(2 * layers);
    for (auto& e : edges) e = uni(rng);
    std::sort(edges.begin(), edges.end());
    std::vector<std::pair<double, double>> out;
    for (int j = 0; j < layers; ++j)
        if (edges[2 * j + 1] > edges[2 * j] + 1e-9)
            out.emplace_back(edges[2 * j], edges[2 * j + 1]);
    if (out.empty())
        out.emplace_back(lo + 0.1 * (hi - lo), lo + 0.2 * (hi - lo));
    return out;
}

} // namespace

LemmaSuiteResult lemma_suite(LemmaId id, long trials, unsigned long long seed) {
    LemmaSuiteResult out;
    out.trials = trials;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni01(0.0, 1.0);
    QuadratureSpec quad;
    quad.rel_tol = 1e-11;

    auto record = [&](double lhs, double rhs) {
        const double margin = rhs - lhs;
        out.worst_margin = std::min(out.worst_margin, margin);
        if (lhs > rhs * (1.0 + 1e-9) + 1e-12)
            ++out.violations;
    };

    for (long t = 0; t < trials; ++t) {
        switch (id) {
        case LemmaId::AnnulusAlternating: {
            std::uniform_int_distribution<int> nm(1, 6);
            const int m = nm(rng);
            std::vector<double> x(m);
            for (auto& v : x) v = 10.0 * uni01(rng);
            std::sort(x.begin(), x.end(), std::greater<double>());
            const double gamma = 1.0 + 3.0 * uni01(rng);
            double alt = 0.0, altPow = 0.0;
            for (int i = 0; i < m; ++i) {
                const double sign = (i % 2 == 0) ? 1.0 : -1.0;
                alt += sign * x[i];
                altPow += sign * std::pow(x[i], gamma);
            }
            record(std::pow(alt, gamma), altPow);
            break;
        }
        case LemmaId::PowerWeighted: {
            const auto ls = random_layers(rng, 0.0, 10.0, 5);
            const double p = 1.0 + 3.0 * uni01(rng);
            double lhs = 0.0, moment = 0.0;
            for (const auto& [a, b] : ls) {
                lhs += b - a;
                moment += (std::pow(b, p) - std::pow(a, p)) / p;
            }
            record(lhs, std::pow(p, 1.0 / p) * std::pow(moment, 1.0 / p));
            break;
        }
        case LemmaId::ExpWeighted: {
            const auto ls = random_layers(rng, -5.0, 5.0, 5);
            const double p = 1.0 + 3.0 * uni01(rng);
            const double gamma = 0.05 + 3.0 * uni01(rng);
            const double pc = 1.0 - 1.0 / p; // 1/p'
            double lhs = 0.0, moment = 0.0;
            for (const auto& [a, b] : ls) {
                lhs += (std::exp(gamma * b) - std::exp(gamma * a)) / gamma;
                moment += (std::exp(p * gamma * b) - std::exp(p * gamma * a)) /
                          (p * gamma);
            }
            record(lhs, std::pow(gamma, -pc) * std::pow(p, 1.0 / p) *
                            std::pow(moment, 1.0 / p));
            break;
        }
        case LemmaId::PolyWeighted: {
            const auto ls = random_layers(rng, 0.0, 10.0, 5);
            const double p = 1.0 + 3.0 * uni01(rng);
            const double gamma = 0.05 + 3.0 * uni01(rng);
            const double pc = 1.0 - 1.0 / p;
            double lhs = 0.0, moment = 0.0;
            for (const auto& [a, b] : ls) {
                lhs += (std::pow(b, gamma) - std::pow(a, gamma)) / gamma;
                moment += (std::pow(b, p * gamma) - std::pow(a, p * gamma)) /
                          (p * gamma);
            }
            record(lhs, std::pow(p, 1.0 / p) * std::pow(gamma, -pc) *
                            std::pow(moment, 1.0 / p));
            break;
        }
        case LemmaId::HyperbolicCosh: {
            const auto ls = random_layers(rng, 0.0, 8.0, 4);
            const double gamma = 0.05 + 3.0 * uni01(rng);
            const double alpha = -2.0 + 4.0 * uni01(rng);
            const double p = std::max(1.0, 1.0 - alpha) + 3.0 * uni01(rng);
            double lhs = 0.0, moment = 0.0;
            for (const auto& [a, b] : ls) {
                lhs += integrate(
                    [gamma](double s) { return std::pow(std::sinh(s), gamma); }, a,
                    b, quad);
                moment += integrate(
                    [&](double s) {
                        return std::pow(std::cosh(s), alpha) *
                               std::pow(std::sinh(s), p * gamma - alpha);
                    },
                    a, b, quad);
            }
            const double pc = 1.0 - 1.0 / p;
            const double s1 = std::sinh(1.0);
            const double c1 = std::cosh(1.0);
            const double C =
                std::pow(p, 1.0 / p) *
                (std::pow(gamma + 1.0, -pc) *
                     std::min(1.0, std::pow(s1, gamma - alpha / p)) *
                     std::max(1.0, std::pow(c1, -alpha / p)) +
                 std::pow(gamma, -pc) / std::pow(2.0, gamma) *
                     std::max(std::pow(2.0, gamma - alpha / p),
                              std::pow(std::exp(1.0) / s1, alpha / p)) *
                     std::max(std::pow(2.0, alpha / p), 1.0));
            record(lhs, C * std::pow(moment, 1.0 / p));
            break;
        }
        case LemmaId::SphereSinCos: {
            const auto ls = random_layers(rng, 0.0, kPi / 2.0, 4);
            const double eta1 = 0.1 + 2.9 * uni01(rng);
            const double eta2 = 0.1 + 2.9 * uni01(rng);
            const double p = 1.0 + 3.0 * uni01(rng);
            double lhs = 0.0, moment = 0.0;
            for (const auto& [a, b] : ls) {
                lhs += integrate_endpoint_singular(
                    [&](double s) {
                        return std::pow(std::sin(s), eta1 - 1.0) *
                               std::pow(std::cos(s), eta2 - 1.0);
                    },
                    a, b, (a == 0.0) ? eta1 - 1.0 : 0.0,
                    (b >= kPi / 2.0 - 1e-12) ? eta2 - 1.0 : 0.0, quad);
                moment += integrate_endpoint_singular(
                    [&](double s) {
                        return std::pow(std::sin(s), p * eta1 - 1.0) *
                               std::pow(std::cos(s), p * eta2 - 1.0);
                    },
                    a, b, (a == 0.0) ? p * eta1 - 1.0 : 0.0,
                    (b >= kPi / 2.0 - 1e-12) ? p * eta2 - 1.0 : 0.0, quad);
            }
            const double pc = 1.0 - 1.0 / p;
            auto mx = [](double x) { return std::max(x, 1.0); };
            const double t32 = std::pow(2.0, 1.5);
            const double C =
                std::pow(p, 1.0 / p) *
                (std::pow(eta1, -pc) *
                     mx(std::pow(t32, eta1 - 1.0) / std::pow(kPi, eta1 - 1.0)) *
                     mx(std::pow(2.0, -0.5 * (eta2 - 1.0))) *
                     mx(std::pow(kPi, p * eta1 - 1.0) /
                        std::pow(t32, p * eta1 - 1.0)) *
                     mx(std::pow(2.0, 0.5 * (p * eta2 - 1.0))) +
                 std::pow(eta2, -pc) * mx(std::pow(2.0, -0.5 * (eta1 - 1.0))) *
                     mx(std::pow(t32, eta2 - 1.0) / std::pow(kPi, eta2 - 1.0)) *
                     mx(std::pow(2.0, 0.5 * (p * eta1 - 1.0))) *
                     mx(std::pow(kPi, p * eta2 - 1.0) /
                        std::pow(t32, p * eta2 - 1.0)));
            record(lhs, C * std::pow(moment, 1.0 / p));
            break;
        }
        }
    }
    return out;
}

} // namespace geoxform

#include "geoxform/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace geoxform {

namespace {

// Gauss-Kronrod 7-15 nodes on [-1, 1].
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
    double value = 0.0;
    double error = 0.0;
    double resabs = 0.0; // integral of |f|, for the roundoff floor
};

GkResult gk15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double gauss = fc * kWg[3];
    double kronrod = fc * kWgk[7];
    double resabs = std::fabs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = half * kXgk[j];
        const double f1 = f(center - x);
        const double f2 = f(center + x);
        kronrod += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1)
            gauss += kWg[j / 2] * (f1 + f2);
    }
    GkResult r;
    r.value = kronrod * half;
    r.error = std::fabs((kronrod - gauss) * half);
    r.resabs = resabs * std::fabs(half);
    return r;
}

struct Panel {
    double a, b, value, error;
};

Panel make_panel(const Integrand& f, double a, double b, double scale) {
    const GkResult r = gk15(f, a, b);
    Panel p{a, b, r.value, r.error};
    if (!std::isfinite(r.value)) {
        // A sample hit a pole or a rounding artifact of a flattened
        // endpoint. Give the panel top refinement priority so the bad
        // point gets isolated into vanishing measure.
        p.value = 0.0;
        p.error = 1e100 * ((b - a) / scale);
    } else {
        // Roundoff floor: the estimate cannot meaningfully drop below the
        // noise of the samples themselves.
        p.error = std::max(
            r.error, 25.0 * std::numeric_limits<double>::epsilon() * r.resabs);
    }
    return p;
}

// Globally budgeted adaptive refinement: split the worst panel until the
// summed error estimate meets max(abs_tol, rel_tol * |I|), the split budget
// runs out, or refinement stalls against rounding noise.
double adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    std::vector<Panel> heap;
    auto byError = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    double total = 0.0, err = 0.0;
    auto push = [&](const Panel& p) {
        total += p.value;
        err += p.error;
        heap.push_back(p);
        std::push_heap(heap.begin(), heap.end(), byError);
    };
    const double scale = b - a;
    push(make_panel(f, a, b, scale));

    const long maxSplits = 220L * std::max(spec.max_depth, 1);
    const double widthFloor =
        8.0 * std::numeric_limits<double>::epsilon() *
        std::max({std::fabs(a), std::fabs(b), 1e-30});
    double stallMark = std::numeric_limits<double>::infinity();
    long stallCounter = 0;
    for (long split = 0; split < maxSplits; ++split) {
        if (err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)))
            break;
        // Stall detection: no factor-of-two progress over a window means
        // the estimates are dominated by noise, not by resolvable error.
        if (err < 0.5 * stallMark) {
            stallMark = err;
            stallCounter = 0;
        } else if (++stallCounter > 200) {
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), byError);
        const Panel worst = heap.back();
        heap.pop_back();
        total -= worst.value;
        err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b) ||
            (worst.b - worst.a) <= widthFloor) {
            Panel frozen = worst;
            frozen.error = 0.0;
            push(frozen);
            continue;
        }
        push(make_panel(f, worst.a, mid, scale));
        push(make_panel(f, mid, worst.b, scale));
    }
    total = 0.0;
    for (const Panel& p : heap)
        total += p.value;
    return total;
}

// Power substitution flattening (t-a)^e: t = a + u^m turns the factor into
// u^(m(1+e)-1) du up to smooth terms. Small orders keep the region where
// t rounds onto the endpoint negligible, so prefer the smallest order with
// an exactly integer exponent, then the smallest with exponent >= 1/2.
int substitution_order(double e) {
    if (e >= 0.0 && e == std::floor(e))
        return 1; // already smooth
    if (e <= -1.0)
        throw NonIntegrable("endpoint exponent <= -1");
    for (int m = 2; m <= 4; ++m) {
        const double ex = m * (1.0 + e) - 1.0;
        if (ex >= -1e-12 && std::fabs(ex - std::round(ex)) < 1e-12)
            return m;
    }
    for (int m = 2; m <= 8; ++m)
        if (m * (1.0 + e) - 1.0 >= 0.5)
            return m;
    for (int m = 2; m <= 64; ++m)
        if (m * (1.0 + e) - 1.0 >= 0.0)
            return m;
    return 64;
}

// One flattened half-interval: endpoint plus sign * u^m for u in [0, uMax].
//
// Near a nonzero endpoint, an integrand that re-derives its distance to the
// endpoint loses all digits once that distance falls under eps * |endpoint|.
// The polluted zone is excised and replaced by the leading power law C u^q,
// whose constant is read off at the first offset with ~sqrt(eps) accuracy;
// the power-law model itself is exact up to O(distance/|endpoint|) there.
double integrate_flattened(const Integrand& f, double endpoint, double sign,
                           double width, double e, const QuadratureSpec& spec) {
    const int m = substitution_order(e);
    if (m == 1) {
        const double a = sign > 0 ? endpoint : endpoint - width;
        return integrate(f, a, a + width, spec);
    }
    const double uMax = std::pow(width, 1.0 / m);
    const double q = m * (1.0 + e) - 1.0;
    const Integrand g = [&f, endpoint, sign, m](double u) {
        const double t = endpoint + sign * std::pow(u, m);
        return f(t) * m * std::pow(u, m - 1);
    };
    double uRef = 0.0;
    if (endpoint != 0.0) {
        const double safeDist = 1e-6 * std::fabs(endpoint);
        uRef = std::min(std::pow(safeDist, 1.0 / m), 0.25 * uMax);
    }
    double patch = 0.0;
    if (uRef > 0.0) {
        // Model g(u) = (C0 + C1 u^m) u^q over the excised zone from two
        // samples; the linear term kills the leading model error.
        const double x1 = std::pow(uRef, m);
        const double u2 = std::pow(2.0 * x1, 1.0 / m);
        const double c1v = g(uRef) / std::pow(uRef, q);
        const double c2v = g(u2) / std::pow(u2, q);
        if (std::isfinite(c1v) && std::isfinite(c2v)) {
            const double C0 = 2.0 * c1v - c2v;
            const double C1 = (c2v - c1v) / x1;
            patch = C0 * std::pow(uRef, q + 1.0) / (q + 1.0) +
                    C1 * x1 * std::pow(uRef, q + 1.0) / (m + q + 1.0);
        }
    }
    return patch + integrate(g, uRef, uMax, spec);
}

} // namespace

double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, spec);
    return adaptive(f, a, b, spec);
}

double integrate_fixed(const Integrand& f, double a, double b) {
    return gk15(f, a, b).value;
}

double integrate_endpoint_singular(const Integrand& f, double a, double b,
                                   double eA, double eB, const QuadratureSpec& spec) {
    if (!(b > a)) return 0.0;
    if (eA <= -1.0 || eB <= -1.0)
        throw NonIntegrable("endpoint exponent <= -1");
    const double mid = 0.5 * (a + b);
    return integrate_flattened(f, a, +1.0, mid - a, eA, spec) +
           integrate_flattened(f, b, -1.0, b - mid, eB, spec);
}

double integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec,
                             double eA) {
    double lo = a;
    double hi = std::max(2.0 * std::fabs(a), a + 1.0);
    double total = integrate_endpoint_singular(f, lo, hi, eA, 0.0, spec);
    int quiet = 0;
    for (int i = 0; i < spec.max_tail_doublings; ++i) {
        lo = hi;
        hi = 2.0 * hi;
        const double piece = integrate(f, lo, hi, spec);
        if (!std::isfinite(piece))
            throw TruncationFailure("tail integrand is not finite");
        total += piece;
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
        if (std::fabs(piece) <= tol) {
            if (++quiet >= spec.tail_octaves)
                return total;
        } else {
            quiet = 0;
        }
    }
    throw TruncationFailure("tail failed the decay test");
}

} // namespace geoxform

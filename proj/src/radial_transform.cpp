#include "geoxform/radial_transform.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "geoxform/hyperfunc.hpp"

namespace geoxform {

namespace {

const double kPi = 3.14159265358979323846;

double xi_distance_sup(const Space& space) {
    return space.curvature == Curvature::Spherical
               ? kPi / 2.0
               : std::numeric_limits<double>::infinity();
}

struct KernelSetup {
    Integrand integrand;
    double prefactor = 1.0;
};

KernelSetup radial_kernel(const Space& space, int k, const RadialProfile& f, double h) {
    KernelSetup ks;
    const double ex = 0.5 * k - 1.0;
    switch (space.curvature) {
    case Curvature::Flat:
        ks.prefactor = sphere_area(k - 1);
        ks.integrand = [&f, h, ex](double t) {
            return f(t) * std::pow(t * t - h * h, ex) * t;
        };
        break;
    case Curvature::Hyperbolic: {
        const double ch = std::cosh(h);
        ks.prefactor = sphere_area(k - 1) / std::pow(ch, k - 1);
        ks.integrand = [&f, ch, ex](double t) {
            const double u = std::cosh(t);
            return f(u) * std::pow(u * u - ch * ch, ex) * std::sinh(t);
        };
        break;
    }
    case Curvature::Spherical: {
        const double ch = std::cos(h);
        ks.prefactor = 2.0 * sphere_area(k - 1) / std::pow(ch, k - 1);
        ks.integrand = [&f, ch, ex](double t) {
            const double u = std::cos(t);
            return f(u) * std::pow(ch * ch - u * u, ex) * std::sin(t);
        };
        break;
    }
    }
    return ks;
}

} // namespace

double kplane_radial(const Space& space, int k, const RadialProfile& f, double h,
                     const QuadratureSpec& quad) {
    const int n = space.dim;
    if (k < 1 || k > n - 1)
        throw DomainError("need 1 <= k <= n-1");
    if (!(h >= 0.0))
        throw DomainError("submanifold distance must be nonnegative");
    if (space.curvature == Curvature::Spherical && h >= kPi / 2.0)
        throw DomainError("spherical submanifold distance must be below pi/2");

    const double A = std::max(h, f.t_lo);
    double B = f.t_hi;
    if (space.curvature == Curvature::Spherical)
        B = std::min(B, kPi / 2.0);
    if (!(B > A))
        return 0.0;

    double eA = 0.0;
    if (h >= f.t_lo) {
        eA += (h > 0.0) ? 0.5 * k - 1.0 : static_cast<double>(k - 1);
        if (h == f.t_lo)
            eA += f.e_lo;
    } else {
        eA += f.e_lo;
    }
    double eB = (B == f.t_hi) ? f.e_hi : 0.0;
    if (eA <= -1.0 || eB <= -1.0)
        throw NonIntegrable("k-plane integrand has endpoint exponent <= -1");

    const KernelSetup ks = radial_kernel(space, k, f, h);
    double integral;
    if (std::isinf(B))
        integral = integrate_to_infinity(ks.integrand, A, quad, eA);
    else
        integral = integrate_endpoint_singular(ks.integrand, A, B, eA, eB, quad);
    return ks.prefactor * integral;
}

double dual_kplane_radial(const Space& space, int k, const RadialProfile& phi,
                          double r, const QuadratureSpec& quad) {
    const int n = space.dim;
    if (k < 1 || k > n - 1)
        throw DomainError("need 1 <= k <= n-1");
    if (!(r > 0.0))
        throw DomainError("dual transform needs r > 0");
    if (space.curvature == Curvature::Spherical && r > kPi / 2.0)
        throw DomainError("ambient distance exceeds pi/2");

    const double S = s_c(space, r);
    const double t_hi = std::min(phi.t_hi, xi_distance_sup(space));
    const double s_lo = (phi.t_lo > 0.0) ? s_c(space, phi.t_lo) : 0.0;
    const double s_hi = std::isinf(t_hi) ? std::numeric_limits<double>::infinity()
                                         : s_c(space, t_hi);
    if (s_lo >= S)
        return 0.0;

    const double theta_lo = (s_lo > 0.0) ? std::asin(s_lo / S) : 0.0;
    const double theta_hi = (s_hi < S) ? std::asin(s_hi / S) : kPi / 2.0;

    double eLo = phi.e_lo;
    if (theta_lo == 0.0)
        eLo += static_cast<double>(n - k - 1);
    double eHi = 0.0;
    if (theta_hi < kPi / 2.0 || s_hi == S)
        eHi = phi.e_hi;
    if (eLo <= -1.0 || eHi <= -1.0)
        throw NonIntegrable("dual integrand has endpoint exponent <= -1");

    const int mexp = n - k - 1;
    const auto& phi_eval = phi.eval;
    const Integrand g = [&phi_eval, S, k, mexp](double theta) {
        const double sn = std::sin(theta);
        const double cs = std::cos(theta);
        return phi_eval(S * sn) * std::pow(cs, k - 1) * std::pow(sn, mexp);
    };
    const double pref =
        sphere_area(k - 1) * sphere_area(n - k - 1) / sphere_area(n - 1);
    return pref * integrate_endpoint_singular(g, theta_lo, theta_hi, eLo, eHi, quad);
}

double kplane_char_interval(const Space& space, int k, double a, double b, double h) {
    if (!(b > a) || a < 0.0)
        throw DomainError("annulus needs 0 <= a < b");
    if (h >= b)
        return 0.0;
    const double lo = std::max(a, h);
    switch (space.curvature) {
    case Curvature::Flat:
        return sphere_area(k - 1) / k *
               (std::pow(b * b - h * h, 0.5 * k) - std::pow(lo * lo - h * h, 0.5 * k));
    case Curvature::Hyperbolic: {
        const double C = std::cosh(h);
        const double A = std::cosh(lo);
        const double B = std::cosh(b);
        const double pref = sphere_area(k - 1) / std::pow(C, k - 1);
        if (k == 1)
            return pref * (std::acosh(B / C) - std::acosh(A / C));
        if (k == 2)
            return pref * (B - A);
        QuadratureSpec spec;
        const double ex = 0.5 * k - 1.0;
        return pref * integrate_endpoint_singular(
                          [C, ex](double u) { return std::pow(u * u - C * C, ex); },
                          A, B, (lo == h) ? ex : 0.0, 0.0, spec);
    }
    case Curvature::Spherical: {
        if (h >= kPi / 2.0)
            throw DomainError("spherical submanifold distance must be below pi/2");
        const double C = std::cos(h);
        const double bcl = std::min(b, kPi / 2.0);
        const double uLo = std::cos(bcl);
        const double uHi = std::cos(lo); // <= C
        const double pref = 2.0 * sphere_area(k - 1) / std::pow(C, k - 1);
        if (k == 1)
            return pref * (std::asin(uHi / C) - std::asin(uLo / C));
        if (k == 2)
            return pref * (uHi - uLo);
        QuadratureSpec spec;
        const double ex = 0.5 * k - 1.0;
        return pref * integrate_endpoint_singular(
                          [C, ex](double u) { return std::pow(C * C - u * u, ex); },
                          uLo, uHi, 0.0, (lo == h) ? ex : 0.0, spec);
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Closed-form catalog
// ---------------------------------------------------------------------------

struct ClosedFormFamily::Cell {
    std::once_flag once;
    double constant = 1.0;
    bool set = false;
};

const char* family_name(ClosedFormFamilyId id) {
    switch (id) {
    case ClosedFormFamilyId::EuclideanBall: return "euclidean-ball";
    case ClosedFormFamilyId::HnBall: return "hn-ball";
    case ClosedFormFamilyId::HnBallCosh: return "hn-ball-cosh";
    case ClosedFormFamilyId::HnBallSinhCosh: return "hn-ball-sinh-cosh";
    case ClosedFormFamilyId::SnBallPlain: return "sn-ball-plain";
    case ClosedFormFamilyId::SnBallCos: return "sn-ball-cos";
    case ClosedFormFamilyId::SnBallCosSinPow: return "sn-ball-cos-sin-pow";
    case ClosedFormFamilyId::SnEquatorPlain: return "sn-equator-plain";
    case ClosedFormFamilyId::SnEquatorCos: return "sn-equator-cos";
    case ClosedFormFamilyId::SnEquatorCosPow: return "sn-equator-cos-pow";
    case ClosedFormFamilyId::DualHnMixed: return "dual-hn-mixed";
    case ClosedFormFamilyId::DualSnMixed: return "dual-sn-mixed";
    }
    return "unknown";
}

ClosedFormFamily::ClosedFormFamily(ClosedFormFamilyId id, double lambda, double alpha,
                                   double p, double gamma1, double gamma2)
    : id_(id), lambda_(lambda), alpha_(alpha), p_(p), gamma1_(gamma1),
      gamma2_(gamma2), cell_(std::make_shared<Cell>()) {}

bool ClosedFormFamily::is_dual_family() const {
    return id_ == ClosedFormFamilyId::DualHnMixed ||
           id_ == ClosedFormFamilyId::DualSnMixed;
}

void ClosedFormFamily::check_hypotheses(const Space& space, int k) const {
    const int n = space.dim;
    if (k < 1 || k > n - 1)
        throw DomainError("need 1 <= k <= n-1");
    const bool sphere = space.curvature == Curvature::Spherical;
    switch (id_) {
    case ClosedFormFamilyId::EuclideanBall:
        if (space.curvature != Curvature::Flat) throw DomainError("flat family");
        if (!(lambda_ > 0.0)) throw DomainError("lambda > 0 required");
        break;
    case ClosedFormFamilyId::HnBall:
    case ClosedFormFamilyId::HnBallCosh:
        if (space.curvature != Curvature::Hyperbolic)
            throw DomainError("hyperbolic family");
        if (!(lambda_ > 0.0)) throw DomainError("lambda > 0 required");
        break;
    case ClosedFormFamilyId::HnBallSinhCosh:
        if (space.curvature != Curvature::Hyperbolic)
            throw DomainError("hyperbolic family");
        if (!(lambda_ > 0.0)) throw DomainError("lambda > 0 required");
        if (!(p_ >= 1.0)) throw DomainError("p >= 1 required");
        break;
    case ClosedFormFamilyId::SnBallPlain:
    case ClosedFormFamilyId::SnBallCos:
    case ClosedFormFamilyId::SnEquatorPlain:
    case ClosedFormFamilyId::SnEquatorCos:
        if (!sphere) throw DomainError("spherical family");
        if (!(lambda_ > 0.0 && lambda_ < kPi / 2.0))
            throw DomainError("lambda in (0, pi/2) required");
        break;
    case ClosedFormFamilyId::SnBallCosSinPow:
        if (!sphere) throw DomainError("spherical family");
        if (!(lambda_ > 0.0 && lambda_ < kPi / 2.0))
            throw DomainError("lambda in (0, pi/2) required");
        if (!(p_ >= 1.0)) throw DomainError("p >= 1 required");
        break;
    case ClosedFormFamilyId::SnEquatorCosPow:
        if (!sphere) throw DomainError("spherical family");
        if (!(lambda_ > 0.0 && lambda_ < kPi / 2.0))
            throw DomainError("lambda in (0, pi/2) required");
        if (!(p_ >= 1.0)) throw DomainError("p >= 1 required");
        if (!(alpha_ < 2.0 * p_)) throw DomainError("alpha < 2p required");
        break;
    case ClosedFormFamilyId::DualHnMixed:
        if (space.curvature != Curvature::Hyperbolic)
            throw DomainError("hyperbolic family");
        if (!(gamma1_ > k - n)) throw DomainError("gamma1 > k - n required");
        break;
    case ClosedFormFamilyId::DualSnMixed:
        if (!sphere) throw DomainError("spherical family");
        if (!(gamma1_ > k - n)) throw DomainError("gamma1 > k - n required");
        break;
    }
}

RadialProfile ClosedFormFamily::profile(const Space& space, int k) const {
    check_hypotheses(space, k);
    const double half = kPi / 2.0;
    switch (id_) {
    case ClosedFormFamilyId::EuclideanBall:
        return power_profile(space, Side::Ambient, 0.0, lambda_, 0.0, 0.0);
    case ClosedFormFamilyId::HnBall:
        return power_profile(space, Side::Ambient, 0.0, lambda_, 0.0, 0.0);
    case ClosedFormFamilyId::HnBallCosh:
        return power_profile(space, Side::Ambient, 0.0, lambda_, 0.0, 1.0);
    case ClosedFormFamilyId::HnBallSinhCosh:
        return power_profile(space, Side::Ambient, 0.0, lambda_, -alpha_ / p_, 1.0);
    case ClosedFormFamilyId::SnBallPlain:
        return power_profile(space, Side::Ambient, 0.0, lambda_, 0.0, 0.0);
    case ClosedFormFamilyId::SnBallCos:
        return power_profile(space, Side::Ambient, 0.0, lambda_, 0.0, 1.0);
    case ClosedFormFamilyId::SnBallCosSinPow:
        return power_profile(space, Side::Ambient, 0.0, lambda_, -alpha_ / p_, 1.0);
    case ClosedFormFamilyId::SnEquatorPlain:
        return power_profile(space, Side::Ambient, lambda_, half, 0.0, 0.0);
    case ClosedFormFamilyId::SnEquatorCos:
        return power_profile(space, Side::Ambient, lambda_, half, 0.0, 1.0);
    case ClosedFormFamilyId::SnEquatorCosPow:
        return power_profile(space, Side::Ambient, lambda_, half, 0.0,
                             1.0 - alpha_ / p_);
    case ClosedFormFamilyId::DualHnMixed:
        return power_profile(space, Side::Submanifold, 0.0,
                             std::numeric_limits<double>::infinity(), gamma1_,
                             gamma2_);
    case ClosedFormFamilyId::DualSnMixed:
        return power_profile(space, Side::Submanifold, 0.0, half, gamma1_, gamma2_);
    }
    throw DomainError("unknown family");
}

double ClosedFormFamily::shape(const Space& space, int k, double x) const {
    check_hypotheses(space, k);
    const double kk = static_cast<double>(k);
    switch (id_) {
    case ClosedFormFamilyId::EuclideanBall:
        if (x >= lambda_) return 0.0;
        return std::pow(lambda_ * lambda_ - x * x, 0.5 * kk);
    case ClosedFormFamilyId::HnBall: {
        if (x >= lambda_) return 0.0;
        const double sl = std::sinh(lambda_), sh = std::sinh(x);
        const double cl = std::cosh(lambda_);
        const double zz = (sl * sl - sh * sh) / (cl * cl);
        return std::pow(std::tanh(lambda_), kk) *
               std::pow(1.0 - sh * sh / (sl * sl), 0.5 * kk) *
               hyp2f1(0.5 * (kk + 1.0), 0.5 * kk, 1.0 + 0.5 * kk, zz);
    }
    case ClosedFormFamilyId::HnBallCosh: {
        if (x >= lambda_) return 0.0;
        const double cl = std::cosh(lambda_), ch = std::cosh(x);
        return std::pow(cl * cl - ch * ch, 0.5 * kk) / std::pow(ch, kk - 1.0);
    }
    case ClosedFormFamilyId::HnBallSinhCosh: {
        if (!(x > 0.0))
            throw DomainError("family excludes submanifolds through the origin");
        if (x >= lambda_) return 0.0;
        const double sl = std::sinh(lambda_), sh = std::sinh(x);
        const double w = 1.0 - sh * sh / (sl * sl);
        return std::pow(sl, kk - alpha_ / p_) / std::pow(std::cosh(x), kk - 1.0) *
               std::pow(w, 0.5 * kk) *
               hyp2f1(0.5 * alpha_ / p_, 1.0, 1.0 + 0.5 * kk, w);
    }
    case ClosedFormFamilyId::SnBallPlain: {
        if (x >= lambda_) return 0.0;
        const double sl = std::sin(lambda_), sh = std::sin(x);
        const double cl = std::cos(lambda_), ch = std::cos(x);
        return std::pow(sl, kk) / std::pow(ch, kk + 1.0) *
               std::pow(1.0 - sh * sh / (sl * sl), 0.5 * kk) *
               hyp2f1(0.5, 0.5 * kk, 1.0 + 0.5 * kk, 1.0 - cl * cl / (ch * ch));
    }
    case ClosedFormFamilyId::SnBallCos: {
        if (x >= lambda_) return 0.0;
        const double sl = std::sin(lambda_), sh = std::sin(x);
        return std::pow(sl * sl - sh * sh, 0.5 * kk) /
               std::pow(std::cos(x), kk - 1.0);
    }
    case ClosedFormFamilyId::SnBallCosSinPow: {
        if (!(x > 0.0))
            throw DomainError("family excludes submanifolds through the origin");
        if (x >= lambda_) return 0.0;
        const double sl = std::sin(lambda_), sh = std::sin(x);
        const double w = 1.0 - sh * sh / (sl * sl);
        return std::pow(sl, kk - alpha_ / p_) / std::pow(std::cos(x), kk - 1.0) *
               std::pow(w, 0.5 * kk) *
               hyp2f1(0.5 * alpha_ / p_, 1.0, 1.0 + 0.5 * kk, w);
    }
    case ClosedFormFamilyId::SnEquatorPlain: {
        if (x >= lambda_)
            return hyp2f1(1.0 - 0.5 * kk, 0.5, 1.5, 1.0);
        const double cl = std::cos(lambda_), ch = std::cos(x);
        return cl / ch * hyp2f1(1.0 - 0.5 * kk, 0.5, 1.5, cl * cl / (ch * ch));
    }
    case ClosedFormFamilyId::SnEquatorCos: {
        const double ch = std::cos(x);
        if (x > lambda_)
            return ch;
        const double sl = std::sin(lambda_), sh = std::sin(x);
        return (std::pow(ch, kk) - std::pow(sl * sl - sh * sh, 0.5 * kk)) /
               std::pow(ch, kk - 1.0);
    }
    case ClosedFormFamilyId::SnEquatorCosPow: {
        const double e = alpha_ / (2.0 * p_);
        const double ch = std::cos(x);
        if (x > lambda_)
            return std::pow(ch, 1.0 - 2.0 * e) *
                   hyp2f1(1.0 - 0.5 * kk, 1.0 - e, 2.0 - e, 1.0);
        const double cl = std::cos(lambda_);
        return std::pow(cl, 2.0 - 2.0 * e) / ch *
               hyp2f1(1.0 - 0.5 * kk, 1.0 - e, 2.0 - e, cl * cl / (ch * ch));
    }
    case ClosedFormFamilyId::DualHnMixed: {
        if (!(x > 0.0))
            throw DomainError("dual transform needs r > 0");
        const double th = std::tanh(x);
        return std::pow(std::sinh(x), gamma1_) * std::pow(std::cosh(x), gamma2_) *
               hyp2f1(-0.5 * gamma2_, 0.5 * kk, 0.5 * (gamma1_ + space.dim),
                      th * th);
    }
    case ClosedFormFamilyId::DualSnMixed: {
        if (!(x > 0.0))
            throw DomainError("dual transform needs r > 0");
        const double tn = std::tan(x);
        return std::pow(std::sin(x), gamma1_) * std::pow(std::cos(x), gamma2_) *
               hyp2f1(-0.5 * gamma2_, 0.5 * kk, 0.5 * (gamma1_ + space.dim),
                      -tn * tn);
    }
    }
    throw DomainError("unknown family");
}

double ClosedFormFamily::quadrature_value(const Space& space, int k, double x,
                                          const QuadratureSpec& quad) const {
    const RadialProfile f = profile(space, k);
    if (is_dual_family())
        return dual_kplane_radial(space, k, f, x, quad);
    return kplane_radial(space, k, f, x, quad);
}

double ClosedFormFamily::calibration_constant() const { return cell_->constant; }

bool ClosedFormFamily::calibrated() const { return cell_->set; }

void ClosedFormFamily::set_calibration(double c) const {
    std::call_once(cell_->once, [this, c] {
        cell_->constant = c;
        cell_->set = true;
    });
}

double closed_form_eval(const Space& space, int k, const ClosedFormFamily& fam,
                        double x, const QuadratureSpec&) {
    return fam.shape(space, k, x) * fam.calibration_constant();
}

double calibrate_constant(const Space& space, int k, const ClosedFormFamily& fam,
                          double reference_point, const QuadratureSpec& quad) {
    const double shape = fam.shape(space, k, reference_point);
    if (!(std::fabs(shape) > 1e-300)) {
        std::ostringstream msg;
        msg << "closed-form shape vanishes at reference point " << reference_point;
        throw DegenerateReference(msg.str());
    }
    const double qv = fam.quadrature_value(space, k, reference_point, quad);
    const double c = qv / shape;
    fam.set_calibration(c);
    return c;
}

} // namespace geoxform

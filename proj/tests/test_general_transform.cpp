#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoxform/general_transform.hpp"
#include "geoxform/radial_transform.hpp"

using namespace geoxform;

namespace {
const double kPi = 3.14159265358979323846;
QuadratureSpec quad() {
    QuadratureSpec q;
    q.rel_tol = 1e-9;
    return q;
}
} // namespace

TEST_CASE("mu_bar") {
    CHECK(mu_bar(0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(mu_bar(std::tanh(0.7)) == doctest::Approx(1.4).epsilon(1e-13));
    CHECK(mu_bar(1e-12) == doctest::Approx(2e-12).epsilon(1e-9));
    CHECK_THROWS_AS(mu_bar(1.0), DomainError);
    CHECK_THROWS_AS(mu_bar(-0.2), DomainError);
}

TEST_CASE("cap quadrature, frozen values") {
    const QuadratureSpec q = quad();
    auto one = [](const std::vector<double>&) { return 1.0; };
    CHECK(cap_quadrature(1, 0.0, one, q) == doctest::Approx(kPi).epsilon(1e-10));
    CHECK(cap_quadrature(2, 0.0, one, q) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK(cap_quadrature(1, std::cos(kPi / 3.0), one, q) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-10));
    // full hemisphere of S^3
    CHECK(cap_quadrature(3, 0.0, one, q) ==
          doctest::Approx(kPi * kPi).epsilon(1e-9));
    // linear-in-pole integrand over the S^2 hemisphere: pi
    auto polar = [](const std::vector<double>& w) { return w.back(); };
    CHECK(cap_quadrature(2, 0.0, polar, q) == doctest::Approx(kPi).epsilon(1e-9));
    CHECK_THROWS_AS(cap_quadrature(5, 0.0, one, q), UnsupportedDimension);
}

TEST_CASE("general transform reproduces radial values, frozen") {
    const QuadratureSpec q = quad();
    // flat n=3, k=1, ball, h=0.6 -> 1.6
    {
        const Space s = flat(3);
        const auto f = ambient_from_radial(s, ball_profile(s, 1.0));
        CHECK(kplane_general(s, axis_coord(s, 1, 0.6), f, q) ==
              doctest::Approx(1.6).epsilon(1e-7));
    }
    // spherical constant: |S^1|
    {
        const Space s = spherical(3);
        RadialProfile one = const_profile(1.0);
        one.t_hi = kPi / 2.0;
        const auto f = ambient_from_radial(s, one);
        CHECK(kplane_general(s, axis_coord(s, 1, 0.5), f, q) ==
              doctest::Approx(2.0 * kPi).epsilon(1e-7));
    }
    // hyperbolic cosh ball against the exact closed form
    {
        const Space s = hyperbolic(3);
        const RadialProfile prof =
            power_profile(s, Side::Ambient, 0.0, 1.0, 0.0, 1.0);
        const auto f = ambient_from_radial(s, prof);
        const double expect = kplane_radial(s, 1, prof, 0.3, q);
        CHECK(kplane_general(s, axis_coord(s, 1, 0.3), f, q) ==
              doctest::Approx(expect).epsilon(1e-5));
    }
    // zero function
    {
        const Space s = hyperbolic(3);
        AmbientFunction zero;
        zero.eval = [](const std::vector<double>&, double) { return 0.0; };
        zero.max_radius = 2.0;
        CHECK(kplane_general(s, axis_coord(s, 1, 0.4), zero, q) ==
              doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(kplane_general(flat(3), axis_coord(flat(3), 1, 0.0),
                                   ambient_from_radial(flat(3), ball_profile(flat(3), 1.0)),
                                   q),
                    DomainError);
}

TEST_CASE("radial consistency across spaces and k") {
    std::mt19937_64 rng(9001);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const QuadratureSpec q = quad();
    for (int i = 0; i < 12; ++i) {
        const int n = 3 + static_cast<int>(uni(rng) * 2);
        const int k = 1 + static_cast<int>(uni(rng) * std::min(n - 1, 3));
        const Space s = (i % 3 == 0)   ? flat(n)
                        : (i % 3 == 1) ? hyperbolic(n)
                                       : spherical(n);
        const double cap = s.curvature == Curvature::Spherical ? 1.3 : 2.0;
        const double lam = 0.4 + uni(rng) * (cap - 0.4);
        const double h = 0.05 + uni(rng) * lam * 0.8;
        const double scp = (s.curvature == Curvature::Flat) ? 0.0 : 1.0;
        const RadialProfile prof =
            power_profile(s, Side::Ambient, 0.0, lam, 0.0, scp);
        const double radial = kplane_radial(s, k, prof, h, q);
        const double general =
            kplane_general(s, axis_coord(s, k, h), ambient_from_radial(s, prof), q);
        CHECK(general == doctest::Approx(radial).epsilon(1e-5));
    }
}

TEST_CASE("rotation equivariance") {
    const QuadratureSpec q = quad();
    // non-radial ambient function: gaussian bump off the axis
    const int n = 3;
    const Space s = hyperbolic(n);
    auto base = [](const std::vector<double>& w, double t) {
        const double x = w[0] * t - 0.8;
        const double y = w[1] * t - 0.2;
        const double z = w[2] * t;
        return std::exp(-2.0 * (x * x + y * y + z * z));
    };
    AmbientFunction f;
    f.eval = base;
    f.max_radius = 6.0;

    const SubmanifoldCoord coord = axis_coord(s, 1, 0.45);
    const double reference = kplane_general(s, coord, f, q);
    for (unsigned long long seed : {5ull, 17ull}) {
        const auto rot = random_rotation(n, seed);
        // rotate the frame, counter-rotate the function
        const SubmanifoldCoord moved = rotate_coord(coord, s, rot);
        AmbientFunction g;
        g.max_radius = f.max_radius;
        g.eval = [&rot, &base, n](const std::vector<double>& w, double t) {
            std::vector<double> back(n, 0.0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    back[c] += rot[r][c] * w[r]; // transpose = inverse
            return base(back, t);
        };
        CHECK(kplane_general(s, moved, g, q) ==
              doctest::Approx(reference).epsilon(1e-8));
    }
}

TEST_CASE("flat x-ray against direct arclength line integrals") {
    const QuadratureSpec q = quad();
    const Space s = flat(2);
    auto bump = [](const std::vector<double>& w, double t) {
        const double x = w[0] * t - 0.3;
        const double y = w[1] * t + 0.4;
        return std::exp(-(x * x + 2.0 * y * y));
    };
    AmbientFunction f;
    f.eval = bump;

    for (double h : {0.3, 0.8, 1.5}) {
        // line { (u, h) : u in R } for the frame (e1; e2)
        const double direct = integrate_to_infinity(
                                  [&](double u) {
                                      const double x = u - 0.3;
                                      const double y = h + 0.4;
                                      return std::exp(-(x * x + 2.0 * y * y));
                                  },
                                  0.0, q) +
                              integrate_to_infinity(
                                  [&](double u) {
                                      const double x = -u - 0.3;
                                      const double y = h + 0.4;
                                      return std::exp(-(x * x + 2.0 * y * y));
                                  },
                                  0.0, q);
        CHECK(kplane_general(s, axis_coord(s, 1, h), f, q) ==
              doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("hyperbolic kernel diverges at the cap boundary with the stated rate") {
    // kernel ~ (u - tanh h)^(-(k+1)/2) as the cap cosine approaches tanh h
    const double h = 0.7;
    const double tau = std::tanh(h);
    for (int k : {1, 2, 3}) {
        std::vector<double> logeps, logv;
        for (double eps : {1e-4, 1e-5, 1e-6, 1e-7}) {
            const double u = tau + eps;
            const double kernel =
                std::pow(u * u / (tau * tau) - 1.0, -0.5 * (k + 1)) / std::sinh(h);
            logeps.push_back(std::log(eps));
            logv.push_back(std::log(kernel));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int m = static_cast<int>(logeps.size());
        for (int i = 0; i < m; ++i) {
            sx += logeps[i];
            sy += logv[i];
            sxx += logeps[i] * logeps[i];
            sxy += logeps[i] * logv[i];
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        CHECK(slope == doctest::Approx(-0.5 * (k + 1)).epsilon(0.05));
    }
}

TEST_CASE("spherical evenness check flags odd parts") {
    const QuadratureSpec q = quad();
    const Space s = spherical(3);
    AmbientFunction odd;
    odd.eval = [](const std::vector<double>& w, double t) {
        return w[0] * std::sin(t); // odd under the antipodal map
    };
    odd.max_radius = kPi / 2.0;
    bool ok = true;
    const double v = kplane_general(s, axis_coord(s, 1, 0.5), odd, q, &ok);
    CHECK_FALSE(ok);
    // odd functions are annihilated
    CHECK(v == doctest::Approx(0.0).epsilon(1e-9));

    AmbientFunction even;
    even.eval = [](const std::vector<double>& w, double t) {
        return w[0] * w[0] * std::sin(t) * std::sin(t) + std::cos(t) * std::cos(t);
    };
    even.max_radius = kPi / 2.0;
    ok = false;
    kplane_general(s, axis_coord(s, 1, 0.5), even, q, &ok);
    CHECK(ok);
}

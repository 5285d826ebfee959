#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoxform/norms.hpp"

using namespace geoxform;

namespace {
const double kPi = 3.14159265358979323846;
QuadratureSpec quad() {
    QuadratureSpec q;
    q.rel_tol = 1e-10;
    return q;
}
} // namespace

TEST_CASE("weighted Lp norms, frozen values") {
    const QuadratureSpec q = quad();
    // area of the unit disk
    CHECK(lp_norm_radial(flat(2), ball_profile(flat(2), 1.0), {0, 0, 1}, q) ==
          doctest::Approx(kPi).epsilon(1e-10));
    // |S^1| lambda^(alpha+n)/(alpha+n) at n=2, alpha=1, lambda=1, p=1
    CHECK(lp_norm_radial(flat(2), ball_profile(flat(2), 1.0), {1, 0, 1}, q) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-10));
    // power law in lambda
    for (double lam : {0.5, 2.0}) {
        const double alpha = 0.7, p = 2.0;
        const int n = 3;
        const double expect = std::pow(
            sphere_area(n - 1) * std::pow(lam, alpha + n) / (alpha + n), 1.0 / p);
        CHECK(lp_norm_radial(flat(n), ball_profile(flat(n), lam), {alpha, 0, p},
                             q) == doctest::Approx(expect).epsilon(1e-9));
    }
    CHECK(lp_norm_radial(flat(2), scale_profile(ball_profile(flat(2), 1.0), 0.0),
                         {0, 0, 2}, q) == doctest::Approx(0.0));
}

TEST_CASE("substitution routes agree") {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const QuadratureSpec q = quad();
    for (int i = 0; i < 50; ++i) {
        const int n = 2 + static_cast<int>(uni(rng) * 3);
        const bool hn = i % 2 == 0;
        const Space s = hn ? hyperbolic(n) : spherical(n);
        const double cap = hn ? 2.5 : 1.3;
        const double a = uni(rng) * 0.3 * cap;
        const double b = a + 0.1 + uni(rng) * (cap - a - 0.1);
        const double scp = uni(rng) * 2.0 - 0.5;
        const RadialProfile f = power_profile(s, Side::Ambient, a, b,
                                              uni(rng) * 1.5 - 0.25, scp);
        const WeightConfig w{uni(rng) * 3.0 - 1.0, uni(rng) * 2.0 - 1.0,
                             1.0 + 2.0 * uni(rng)};
        const double direct = lp_norm_radial(s, f, w, q, NormRoute::Direct);
        const double canonical = lp_norm_radial(s, f, w, q, NormRoute::CanonicalU);
        const double square = lp_norm_radial(s, f, w, q, NormRoute::SquareSub);
        CHECK(canonical == doctest::Approx(direct).epsilon(1e-8));
        CHECK(square == doctest::Approx(direct).epsilon(1e-8));
        if (!hn) {
            const double tan = lp_norm_radial(s, f, w, q, NormRoute::TanSub);
            CHECK(tan == doctest::Approx(direct).epsilon(1e-8));
        }
    }
}

TEST_CASE("transform norm composes with the submanifold measure") {
    const QuadratureSpec q = quad();
    // flat n=3 k=2, f = chi ball: norm = [ |S^0| int_0^1 (pi(1-s^2))^1 ds ]
    const double direct =
        lr_norm_transform(flat(3), 2, ball_profile(flat(3), 1.0), {0, 0, 1}, q);
    const double expect = sphere_area(0) * kPi * (1.0 - 1.0 / 3.0);
    CHECK(direct == doctest::Approx(expect).epsilon(1e-7));
    // spherical: R_k 1 = |S^k| and the weighted measure of the submanifold
    // space integrates the polar density
    RadialProfile one = const_profile(1.0);
    one.t_hi = kPi / 2.0;
    const double norm =
        lr_norm_transform(spherical(3), 1, one, {0, 0, 1}, q);
    const double xiMass = sphere_area(1) * integrate(
        [&](double h) { return polar_weight_xi(spherical(3), 1, h); }, 0.0,
        kPi / 2.0, q);
    CHECK(norm == doctest::Approx(sphere_area(1) * xiMass).epsilon(1e-7));
}

TEST_CASE("transform norm substitution route agrees") {
    const QuadratureSpec q = quad();
    std::mt19937_64 rng(217);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 6; ++i) {
        const bool hn = i % 2 == 0;
        const int n = 3 + (i % 2);
        const Space s = hn ? hyperbolic(n) : spherical(n);
        const int k = 1 + static_cast<int>(uni(rng) * (n - 1));
        const double cap = hn ? 2.0 : 1.3;
        const RadialProfile f = power_profile(
            s, Side::Ambient, 0.0, 0.3 + uni(rng) * (cap - 0.3), 0.0, 1.0);
        const WeightConfig w{0.5 + uni(rng), uni(rng) - 0.5, 1.0 + uni(rng)};
        const double direct = lr_norm_transform(s, k, f, w, q, NormRoute::Direct);
        const double subst =
            lr_norm_transform(s, k, f, w, q, NormRoute::CanonicalU);
        CHECK(subst == doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("transform norm monotone in the derivative weight") {
    // on the submanifold side cosh >= 1, so lowering beta2 lowers the norm
    const QuadratureSpec q = quad();
    const Space s = hyperbolic(3);
    const RadialProfile f = power_profile(s, Side::Ambient, 0.0, 1.5, 0.0, 1.0);
    double prev = -1.0;
    for (double b2 : {-1.0, 0.0, 0.5, 1.0}) {
        const double v = lr_norm_transform(s, 1, f, {0.2, b2, 2.0}, q);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("divergent transform norms are reported") {
    const QuadratureSpec q = quad();
    // beta1 <= k - n makes the submanifold weight non-integrable at h = 0
    CHECK_THROWS_AS(lr_norm_transform(hyperbolic(3), 1,
                                      ball_profile(hyperbolic(3), 1.0),
                                      {-2.0, 0, 2.0}, q),
                    DivergentNorm);
}

TEST_CASE("Lorentz norm of layered characteristic sets") {
    const QuadratureSpec q = quad();
    // unit disk at p=2: sqrt(pi)
    const LayeredRadialSet disk({{0.0, 1.0}});
    CHECK(lorentz_p1_norm(flat(2), disk, {0, 0, 2}, q) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
    CHECK(lorentz_p1_norm(flat(2), LayeredRadialSet{}, {0, 0, 2}, q) == 0.0);
    // single layers coincide with the Lebesgue norm of the indicator
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 12; ++i) {
        const Space s = (i % 3 == 0)   ? flat(3)
                        : (i % 3 == 1) ? hyperbolic(3)
                                       : spherical(3);
        const double cap = s.curvature == Curvature::Spherical ? 1.4 : 3.0;
        const double a = uni(rng) * 0.5 * cap;
        const double b = a + 0.05 + uni(rng) * (cap - a - 0.1);
        const WeightConfig w{uni(rng), uni(rng) - 0.5, 1.0 + 2.0 * uni(rng)};
        const LayeredRadialSet set({{a, b}});
        CHECK(lorentz_p1_norm(s, set, w, q) ==
              doctest::Approx(lp_norm_radial(s, annulus_profile(s, a, b), w, q))
                  .epsilon(1e-8));
    }
    CHECK_THROWS_AS(LayeredRadialSet({{0.5, 0.2}}), DomainError);
    CHECK_THROWS_AS(LayeredRadialSet({{0.1, 0.5}, {0.3, 0.8}}), DomainError);
}

TEST_CASE("duality pairing, frozen flat case") {
    const QuadratureSpec q = quad();
    // f = chi ball, phi = chi_{h<1}: both sides 4 pi / 3
    const Space s = flat(3);
    RadialProfile phi = const_profile(1.0);
    phi.t_hi = 1.0;
    const auto [lhs, rhs] = duality_pairing(s, 1, ball_profile(s, 1.0), phi, q);
    CHECK(lhs == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-7));
    CHECK(rhs == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-7));
}

TEST_CASE("duality pairing across spaces and weights") {
    const QuadratureSpec q = quad();
    // zero function pairs to zero
    {
        const auto [l, r] = duality_pairing(
            flat(3), 1, scale_profile(ball_profile(flat(3), 1.0), 0.0),
            const_profile(1.0), q);
        CHECK(l == doctest::Approx(0.0));
        CHECK(r == doctest::Approx(0.0));
    }
    // hyperbolic cosh-ball against the sinh weight (closed forms exist for
    // both sides of this pair)
    {
        const Space s = hyperbolic(3);
        const RadialProfile f = power_profile(s, Side::Ambient, 0.0, 1.0, 0.0, 1.0);
        const RadialProfile phi =
            power_profile(s, Side::Submanifold, 0.0, 40.0, 1.0, 0.0);
        const auto [l, r] = duality_pairing(s, 1, f, phi, q);
        CHECK(l == doctest::Approx(r).epsilon(1e-5));
    }
    // spherical mixed weights
    {
        const Space s = spherical(4);
        const RadialProfile f = power_profile(s, Side::Ambient, 0.0, 1.2, 0.5, 1.0);
        const RadialProfile phi =
            power_profile(s, Side::Submanifold, 0.0, kPi / 2.0, 0.8, 2.0);
        const auto [l, r] = duality_pairing(s, 2, f, phi, q);
        CHECK(l == doctest::Approx(r).epsilon(1e-5));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoxform/geometry.hpp"
#include "geoxform/quadrature.hpp"

using namespace geoxform;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("curvature function and derivative") {
    CHECK(s_c(flat(3), 2.5) == doctest::Approx(2.5));
    CHECK(s_c(spherical(3), kPi / 2) == doctest::Approx(1.0));
    CHECK(s_c_prime(spherical(3), kPi / 2) == doctest::Approx(0.0));
    CHECK(s_c(hyperbolic(2), 0.0) == doctest::Approx(0.0));
    CHECK(s_c_prime(hyperbolic(2), 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(s_c(flat(3), -1.0), DomainError);
    CHECK_THROWS_AS(Space(Curvature::Flat, 1), DomainError);
}

TEST_CASE("curvature function solves s'' + c s = 0") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ut(0.05, 3.0);
    const double dt = 1e-4;
    for (const auto& [space, c] :
         {std::pair{flat(3), 0.0}, {hyperbolic(3), -1.0}, {spherical(3), 1.0}}) {
        for (int i = 0; i < 100; ++i) {
            double t = ut(rng);
            if (space.curvature == Curvature::Spherical) t = std::min(t, 3.0);
            const double dd =
                (s_c(space, t + dt) - 2.0 * s_c(space, t) + s_c(space, t - dt)) /
                (dt * dt);
            CHECK(std::fabs(dd + c * s_c(space, t)) < 1e-6);
        }
    }
}

TEST_CASE("polar weights") {
    CHECK(polar_weight_x(flat(3), 2.0) == doctest::Approx(4.0));
    CHECK(polar_weight_x(flat(4), 0.0) == doctest::Approx(0.0));
    CHECK(polar_weight_x(hyperbolic(2), 1.0) ==
          doctest::Approx(std::sinh(1.0)).epsilon(1e-12));

    CHECK(polar_weight_xi(hyperbolic(4), 2, 0.0) == doctest::Approx(0.0));
    CHECK(polar_weight_xi(spherical(3), 1, kPi / 4) == doctest::Approx(0.5));
    CHECK(polar_weight_xi(flat(3), 1, 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(polar_weight_xi(flat(3), 3, 1.0), DomainError);
}

TEST_CASE("ball volume via polar decomposition") {
    // |S^2| * integral_0^R t^2 dt = 4/3 pi R^3
    QuadratureSpec quad;
    const Space s = flat(3);
    const double R = 1.7;
    const double vol =
        sphere_area(2) * integrate([&](double t) { return polar_weight_x(s, t); },
                                   0.0, R, quad);
    CHECK(vol == doctest::Approx(4.0 / 3.0 * kPi * R * R * R).epsilon(1e-10));
}

TEST_CASE("canonical arguments") {
    CHECK(canonical_arg(hyperbolic(3), Side::Ambient, 0.0) == doctest::Approx(1.0));
    CHECK(canonical_arg(spherical(3), Side::Ambient, kPi / 3) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(canonical_arg(hyperbolic(3), Side::Submanifold, 0.0) ==
          doctest::Approx(0.0));
    CHECK(canonical_arg(flat(3), Side::Ambient, 1.25) == doctest::Approx(1.25));
}

TEST_CASE("sphere areas") {
    CHECK(sphere_area(0) == doctest::Approx(2.0));
    CHECK(sphere_area(1) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(sphere_area(2) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("frames validate and rotations preserve orthonormality") {
    const Space s = hyperbolic(4);
    const auto coord = axis_coord(s, 2, 0.7);
    CHECK(frame_orthonormality_defect(coord.frame) < 1e-14);

    for (unsigned long long seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const auto rot = random_rotation(4, seed);
        const auto moved = rotate_coord(coord, s, rot);
        CHECK(frame_orthonormality_defect(moved.frame) < 1e-12);
    }

    auto bad = coord.frame;
    bad[0][0] += 1e-6;
    CHECK_THROWS_AS(SubmanifoldCoord(s, 2, 0.7, bad), DomainError);
    CHECK_THROWS_AS(SubmanifoldCoord(spherical(3), 1, kPi / 2,
                                     axis_coord(spherical(3), 1, 0.1).frame),
                    DomainError);
}

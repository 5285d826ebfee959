#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoxform/hyperfunc.hpp"
#include "geoxform/quadrature.hpp"

using namespace geoxform;

namespace {
const double kPi = 3.14159265358979323846;

// Truncated-series oracle, independent of the production routing.
double series_oracle(double a, double b, double c, double z, int terms = 200000) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < terms; ++k) {
        term *= (a + k) * (b + k) * z / ((c + k) * (k + 1.0));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

// Euler-integral oracle by brute quadrature (for c > b > 0).
double euler_oracle(double a, double b, double c, double z) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    const double integral = integrate_endpoint_singular(
        [&](double t) {
            return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) *
                   std::pow(1.0 - z * t, -a);
        },
        0.0, 1.0, b - 1.0, c - b - 1.0, spec);
    return integral * gamma_fn(c) / (gamma_fn(b) * gamma_fn(c - b));
}

} // namespace

TEST_CASE("gamma function basics") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
    CHECK_THROWS_AS(gamma_fn(-3.0), PoleError);
    // reflection territory
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
    // recurrence over a wide range
    for (double x : {0.3, 1.7, 4.2, 11.5, 23.25, 41.0}) {
        CHECK(gamma_fn(x + 1.0) ==
              doctest::Approx(x * gamma_fn(x)).epsilon(1e-13));
    }
    // signed log-gamma agrees with gamma
    for (double x : {-4.3, -1.2, 0.4, 3.7, 17.0}) {
        int s;
        const double lg = lgamma_signed(x, &s);
        CHECK(s * std::exp(lg) == doctest::Approx(gamma_fn(x)).epsilon(1e-12));
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.0, 2) == doctest::Approx(12.0));
    CHECK(pochhammer(7.5, 0) == doctest::Approx(1.0));
    CHECK(pochhammer(1.0, 5) == doctest::Approx(120.0));
    CHECK_THROWS_AS(pochhammer(1.0, -1), DomainError);
}

TEST_CASE("hyp2f1 special values") {
    CHECK(hyp2f1(0.3, -1.7, 2.4, 0.0) == doctest::Approx(1.0));
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.5) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(hyp2f1(1.0, 1.0, 2.0, -1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // Gauss value at z = 1
    CHECK(hyp2f1(0.5, 0.5, 2.0, 1.0) ==
          doctest::Approx(4.0 / kPi).epsilon(1e-12));
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), DivergenceError);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 2.0, 1.5), DomainError);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, -2.0, 0.5), DomainError);
    // terminating polynomial case
    CHECK(hyp2f1(-2.0, 3.0, 1.5, 0.7) ==
          doctest::Approx(1.0 - 2.0 * 3.0 / 1.5 * 0.7 +
                          (-2.0) * (-1.0) * 3.0 * 4.0 / (1.5 * 2.5) * 0.49 / 2.0));
}

TEST_CASE("series and Euler-integral routes agree on random points") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uab(0.1, 2.5);
    std::uniform_real_distribution<double> uc(0.2, 2.0);
    std::uniform_real_distribution<double> uz(-5.0, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const double b = uab(rng);
        const double a = uab(rng);
        const double c = b + uc(rng);
        const double z = uz(rng);
        const double ours = hyp2f1(a, b, c, z);
        if (z > -1.0) {
            // inside the series disc the contract is 1e-10 against the series
            CHECK(ours == doctest::Approx(series_oracle(a, b, c, z)).epsilon(1e-10));
            CHECK(series_oracle(a, b, c, z) ==
                  doctest::Approx(euler_oracle(a, b, c, z)).epsilon(1e-9));
        } else {
            // beyond it, the Euler-integral oracle carries its own
            // quadrature error of about 1e-9
            CHECK(ours == doctest::Approx(euler_oracle(a, b, c, z)).epsilon(4e-9));
        }
    }
}

TEST_CASE("hyp2f1 near one routes through the connection formula") {
    // modest parameters, z close to 1
    for (double z : {0.6, 0.9, 0.99, 0.99999}) {
        const double v = hyp2f1(0.4, 0.7, 2.3, z);
        const double ref = euler_oracle(0.4, 0.7, 2.3, z);
        CHECK(v == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("transformations agree with the direct evaluation") {
    HypParams p{0.3, 0.9, 2.2, -4.0};
    const double direct = hyp2f1(p);
    CHECK(hyp2f1_transform(p, Hyp2f1Transform::EulerA) ==
          doctest::Approx(direct).epsilon(1e-9));
    CHECK(hyp2f1_transform(p, Hyp2f1Transform::EulerB) ==
          doctest::Approx(direct).epsilon(1e-9));
    CHECK(hyp2f1_transform(p, Hyp2f1Transform::EulerC) ==
          doctest::Approx(direct).epsilon(1e-9));
    CHECK(hyp2f1_transform(p, Hyp2f1Transform::InversionZ) ==
          doctest::Approx(direct).epsilon(1e-9));
    CHECK(hyp2f1_transform(p, Hyp2f1Transform::InversionZ) ==
          doctest::Approx(euler_oracle(0.3, 0.9, 2.2, -4.0)).epsilon(1e-9));

    HypParams q{1.0, 1.0, 2.0, -1.0};
    CHECK(hyp2f1_transform(q, Hyp2f1Transform::EulerA) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(hyp2f1_transform(q, Hyp2f1Transform::InversionZ),
                    TransformInapplicable);
    HypParams z0{0.7, 1.3, 2.1, 0.0};
    for (auto which : {Hyp2f1Transform::EulerA, Hyp2f1Transform::EulerB,
                       Hyp2f1Transform::EulerC})
        CHECK(hyp2f1_transform(z0, which) == doctest::Approx(1.0));
}

TEST_CASE("near-one classification") {
    const auto c1 = hyp2f1_near_one_class(0.5, 0.5, 2.0);
    CHECK(c1.kind == AsymptoticClass::Kind::ConstantAtOne);
    CHECK(c1.coefficient == doctest::Approx(4.0 / kPi).epsilon(1e-13));

    const auto c2 = hyp2f1_near_one_class(1.0, 1.0, 2.0);
    CHECK(c2.kind == AsymptoticClass::Kind::LogDivergent);
    CHECK(c2.coefficient == doctest::Approx(1.0).epsilon(1e-13));

    const auto c3 = hyp2f1_near_one_class(1.0, 2.0, 2.0);
    CHECK(c3.kind == AsymptoticClass::Kind::PowerDivergent);
    CHECK(c3.exponent == doctest::Approx(-1.0));
    CHECK(c3.coefficient == doctest::Approx(1.0).epsilon(1e-13));

    // a at a nonpositive integer poles the log-class coefficient
    CHECK_THROWS_AS(hyp2f1_near_one_class(-1.0, 3.0, 2.0), CoefficientPole);
}

TEST_CASE("asymptotic correctness along z -> 1") {
    // constant class: monotone approach
    const auto cls = hyp2f1_near_one_class(0.4, 0.8, 2.5);
    double prev = std::numeric_limits<double>::infinity();
    for (double z : {0.9, 0.99, 0.999}) {
        const double gap = std::fabs(hyp2f1(0.4, 0.8, 2.5, z) - cls.coefficient);
        CHECK(gap < prev);
        prev = gap;
    }
    // log class: at a = b = 1 the constant term under the log vanishes, so
    // the 2% window is attainable this close to 1
    const auto lg = hyp2f1_near_one_class(1.0, 1.0, 2.0);
    const double z = 1.0 - 1e-8;
    CHECK(hyp2f1(1.0, 1.0, 2.0, z) / (-std::log(1.0 - z)) ==
          doctest::Approx(lg.coefficient).epsilon(0.02));
    // power class
    const auto pw = hyp2f1_near_one_class(1.2, 1.9, 2.0);
    CHECK(hyp2f1(1.2, 1.9, 2.0, z) * std::pow(1.0 - z, -pw.exponent) ==
          doctest::Approx(pw.coefficient).epsilon(0.02));
}

TEST_CASE("positivity floor for negative a") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> ua(-3.0, -0.05);
    std::uniform_real_distribution<double> ub(0.1, 2.0);
    std::uniform_real_distribution<double> uz(-4.0, 0.999);
    for (int i = 0; i < 300; ++i) {
        const double a = ua(rng);
        const double b = ub(rng);
        const double c = b + ub(rng);
        const double z = uz(rng);
        const double floor = gamma_fn(c) * gamma_fn(c - b - a) /
                             (gamma_fn(c - a) * gamma_fn(c - b));
        CHECK(floor > 0.0);
        CHECK(hyp2f1(a, b, c, z) >= floor * (1.0 - 1e-9));
    }
}

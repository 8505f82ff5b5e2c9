#include "oracles.hpp"

#include "yamacone/errors.hpp"
#include "yamacone/geometry.hpp"
#include "yamacone/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace yamacone;
using std::numbers::pi;

TEST(SphereConstants, VolumeExamples) {
    EXPECT_NEAR(sphere_volume(1), 2 * pi, 1e-14);
    EXPECT_NEAR(sphere_volume(4), 8 * pi * pi / 3, 1e-12);
    EXPECT_NEAR(sphere_volume(5), pi * pi * pi, 1e-12);
    for (int n = 1; n <= 9; ++n) EXPECT_NEAR(sphere_volume(n), oracle::sphere_volume(n), 1e-9) << n;
    EXPECT_THROW(sphere_volume(0), DomainError);
}

TEST(SphereConstants, YamabeExamples) {
    EXPECT_NEAR(sphere_yamabe(2), 8 * pi, 1e-12);
    EXPECT_NEAR(sphere_yamabe(3), 6 * std::pow(2 * pi * pi, 2.0 / 3), 1e-12);
    EXPECT_NEAR(sphere_yamabe(3), 43.823, 1e-3);
    EXPECT_NEAR(sphere_yamabe(5), 20 * std::pow(pi, 1.2), 1e-11);
    EXPECT_NEAR(sphere_yamabe(5), 78.99, 0.01);
    EXPECT_THROW(sphere_yamabe(1), DomainError);
}

TEST(SphereConstants, Bundle) {
    for (int n = 3; n <= 8; ++n) {
        const auto c = SphereConstants::of(n);
        EXPECT_NEAR(c.yamabe, n * (n - 1.0) * std::pow(c.volume, 2.0 / n), 1e-12 * c.yamabe);
        EXPECT_DOUBLE_EQ(c.a, 4.0 * (n - 1) / (n - 2));
        EXPECT_DOUBLE_EQ(c.p, 2.0 * n / (n - 2));
    }
    EXPECT_THROW(SphereConstants::of(2), DomainError);
    EXPECT_THROW(yamabe_coefficient(2), DomainError);
}

TEST(SinPowerIntegral, RecursionMatchesQuadrature) {
    for (int n : {0, 1, 2, 3, 7, 16, 33, 64}) {
        for (double r : {0.0, 0.1, 1.0, pi / 2, 2.5, pi}) {
            EXPECT_NEAR(sin_power_integral_recursive(n, r), sin_power_integral_quadrature(n, r), 1e-10)
                << n << " " << r;
            EXPECT_NEAR(sin_power_integral(n, r), oracle::sin_power(n, 0.0, r), 1e-10);
        }
    }
    // Beyond the recursion limit the quadrature path is used.
    EXPECT_NEAR(sin_power_integral(80, pi), oracle::sin_power(80, 0.0, pi), 1e-10);
    EXPECT_NEAR(sin_power_integral(3, 0.5, 1.5), oracle::sin_power(3, 0.5, 1.5), 1e-12);
    EXPECT_THROW(sin_power_integral(-1, 1.0), DomainError);
}

TEST(EinsteinData, Invariants) {
    const auto d = EinsteinData::einstein_metric("s2xs2", 4, 16 * pi * pi, 1.0);
    EXPECT_DOUBLE_EQ(d.scalar, 4.0);
    EXPECT_THROW(EinsteinData::einstein_metric("bad", 1, 1.0, 1.0), ValidationError);
    EXPECT_THROW(EinsteinData::einstein_metric("bad", 3, -1.0, 1.0), ValidationError);
    EXPECT_THROW((EinsteinData{"bad", 3, 1.0, 2.0, 5.0, true}.validate()), ValidationError);

    const auto n = d.normalized();
    EXPECT_DOUBLE_EQ(n.lambda, 3.0);
    EXPECT_NEAR(n.volume, 16 * pi * pi / 9, 1e-12);
    EXPECT_NEAR(n.scalar, 12.0, 1e-12);
    EXPECT_FALSE(d.bishop_warning());

    const auto nonneg = EinsteinData::ricci_bounded("flat", 3, 1.0, 0.0, 0.0);
    EXPECT_THROW(nonneg.normalized(), DomainError);

    const auto fat = EinsteinData::einstein_metric("fat", 2, 100.0, 1.0);
    ASSERT_TRUE(fat.bishop_warning());
}

TEST(SphericalCone, NormalizesAndIntegrates) {
    const SphericalCone cone(EinsteinData::einstein_metric("cp2", 4, 2 * pi * pi, 3.0));
    EXPECT_DOUBLE_EQ(cone.base().lambda, 3.0);
    EXPECT_EQ(cone.dimension(), 5);
    EXPECT_NEAR(cone.total_volume(), 2 * pi * pi * oracle::sin_power(4, 0.0, pi), 1e-10);

    const SphericalCone s2(EinsteinData::einstein_metric("s2", 2, 4 * pi, 4.0));  // radius 1/2
    EXPECT_DOUBLE_EQ(s2.base().lambda, 1.0);
    EXPECT_NEAR(s2.base_volume(), 4 * pi * 4.0, 1e-12);
}

TEST(ConeSectional, Examples) {
    auto k = cone_sectional(1.0, pi / 3);
    EXPECT_NEAR(k.tangential, 1.0, 1e-14);
    EXPECT_EQ(k.radial, 1.0);
    k = cone_sectional(2.0, pi / 2);
    EXPECT_NEAR(k.tangential, 2.0, 1e-14);
    for (int i = 0; i < 100; ++i) EXPECT_NEAR(cone_sectional(1.0, (i + 0.5) * pi / 100).tangential, 1.0, 1e-12);
    EXPECT_THROW(cone_sectional(1.0, 0.0), DomainError);
    EXPECT_THROW(cone_sectional(1.0, pi), DomainError);
}

TEST(ConeRicci, EinsteinPropagation) {
    for (int n = 2; n <= 7; ++n) {
        const std::vector<double> base(n, n - 1.0);
        for (int i = 0; i < 100; ++i) {
            const auto eig = cone_ricci(base, (i + 0.5) * pi / 100);
            ASSERT_EQ(eig.size(), static_cast<std::size_t>(n + 1));
            for (double e : eig) EXPECT_NEAR(e, n, 1e-12 * n);
        }
    }
    const auto eq = cone_ricci(std::vector<double>{1.0, 1.0}, pi / 2);
    for (double e : eq) EXPECT_NEAR(e, 2.0, 1e-15);
}

TEST(ConeRicci, LowerBoundPropagates) {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = rng.integer(2, 6);
        const auto base = random_ricci_bounded(rng, n, 4.0);
        const double t = rng.uniform(1e-3, pi - 1e-3);
        for (double e : cone_ricci(base, t)) EXPECT_GE(e, n * (1 - 1e-12));
    }
}

TEST(ConeRicci, TangentialFormula) {
    const std::vector<double> base{0.5, 3.0, 1.0};
    const double t = 0.8;
    const auto eig = cone_ricci(base, t);
    const double s2 = std::sin(t) * std::sin(t), c2 = std::cos(t) * std::cos(t);
    for (std::size_t i = 0; i < base.size(); ++i)
        EXPECT_NEAR(eig[i], (base[i] - 2 * c2 + s2) / s2, 1e-13);
    EXPECT_EQ(eig.back(), 3.0);
    EXPECT_THROW(cone_ricci(std::vector<double>{1.0}, 1.0), DomainError);
    EXPECT_THROW(cone_ricci(base, 0.0), DomainError);
}

TEST(ConeBall, VolumeExamples) {
    const auto s2 = SphericalCone::round(2);
    EXPECT_EQ(cone_ball_volume(s2, 0.0), 0.0);
    EXPECT_NEAR(cone_ball_volume(s2, pi / 2), pi * pi, 1e-12);
    for (int n = 2; n <= 6; ++n) {
        const SphericalCone c(EinsteinData::einstein_metric("x", n, 0.4 * sphere_volume(n), n - 1.0));
        EXPECT_NEAR(cone_ball_volume(c, pi), c.base_volume() * sphere_volume(n + 1) / sphere_volume(n),
                    1e-12 * c.total_volume());
        double prev = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double v = cone_ball_volume(c, i * pi / 50);
            EXPECT_GE(v, prev);
            prev = v;
        }
    }
    EXPECT_THROW(cone_ball_volume(s2, -0.1), DomainError);
    EXPECT_THROW(cone_ball_volume(s2, 3.2), DomainError);
}

TEST(ConeBall, AreaExamplesAndDuality) {
    const auto s2 = SphericalCone::round(2);
    EXPECT_NEAR(cone_ball_area(s2, pi / 2), 4 * pi, 1e-12);
    EXPECT_NEAR(cone_ball_area(SphericalCone::round(4), pi / 4), 2 * pi * pi / 3, 1e-12);
    EXPECT_EQ(cone_ball_area(s2, 0.0), 0.0);
    EXPECT_EQ(cone_ball_area(s2, pi), 0.0);

    const SphericalCone c(EinsteinData::einstein_metric("x", 3, 5.0, 2.0));
    for (double h : {1e-2, 5e-3}) {
        double worst = 0.0;
        for (int i = 1; i < 40; ++i) {
            const double r = i * pi / 40;
            const double fd = (cone_ball_volume(c, r + h) - cone_ball_volume(c, r - h)) / (2 * h);
            worst = std::max(worst, std::abs(fd - cone_ball_area(c, r)));
        }
        EXPECT_LT(worst, 2.0 * h * h * c.base_volume()) << h;  // O(h^2)
    }
}

TEST(Conformal, H0Examples) {
    EXPECT_NEAR(conformal_map_h0(pi / 2), 0.0, 1e-16);
    for (int i = 1; i < 100; ++i) {
        const double t = pi / 2 + i * (pi / 2 - 1e-3) / 100;
        EXPECT_NEAR(std::cosh(conformal_map_h0(t)) * std::sin(t), 1.0, 1e-12);
        EXPECT_NEAR(conformal_map_h0(t), std::acosh(1.0 / std::sin(t)), 1e-6);
        EXPECT_NEAR(conformal_map_h0(pi - t), -conformal_map_h0(t), 1e-12);
    }
    double prev = -1e300;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 1e-3 + i * (pi - 2e-3) / 1000;
        const double h = conformal_map_h0(t);
        EXPECT_GT(h, prev);
        prev = h;
        EXPECT_NEAR(conformal_map_h0_inverse(h), t, 1e-12);
        const double step = 1e-4 * std::min(t, pi - t);
        const double fd = (conformal_map_h0(t + step) - conformal_map_h0(t - step)) / (2 * step);
        EXPECT_NEAR(fd * std::sin(t), 1.0, 1e-6);
    }
    EXPECT_THROW(conformal_map_h0(0.0), DomainError);
    EXPECT_THROW(conformal_map_h0(pi), DomainError);
}

TEST(Conformal, F0Identities) {
    EXPECT_EQ(conformal_factor_f0(0.0), 1.0);
    for (int i = 0; i <= 1000; ++i) {
        const double t = 1e-3 + i * (pi - 2e-3) / 1000;
        EXPECT_NEAR(conformal_factor_f0(conformal_map_h0(t)), std::sin(t) * std::sin(t), 1e-12);
    }
    double prev = 1.0;
    for (double u = 0.5; u < 40; u += 0.5) {
        const double f = conformal_factor_f0(u);
        EXPECT_LT(f, prev);
        EXPECT_EQ(f, conformal_factor_f0(-u));
        prev = f;
    }
    EXPECT_LT(conformal_factor_f0(40.0), 1e-30);
}

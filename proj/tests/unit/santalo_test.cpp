#include "../oracles.hpp"

#include <polarcvx/convex_body.hpp>
#include <polarcvx/function.hpp>
#include <polarcvx/santalo.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace polarcvx;

TEST(Santalo, ConstantA) {
  EXPECT_NEAR(constant_a(), oracle::constant_a(), 1e-6);
  EXPECT_GE(constant_a(), 0.7);
}

TEST(Santalo, UpperBoundFactorMatchesGridOracle) {
  for (int n = 1; n <= 10; ++n) {
    const auto f = upper_bound_factor(n);
    EXPECT_NEAR(f.factor, oracle::upper_factor(n), 1e-3 * f.factor) << n;
    EXPECT_LE(f.factor, f.reference_factor + 1e-12);
    EXPECT_NEAR(f.reference_factor,
                std::exp(1.0 / f.reference_t) * (std::pow(f.reference_t, n) / oracle::factorial(n) + 1.0), 1e-12);
  }
  EXPECT_NEAR(upper_bound_factor(1).reference_factor, 2.0 * std::numbers::e, 1e-12);
  EXPECT_LE(upper_bound_factor(10).factor, 4.0);
  EXPECT_NEAR(upper_bound_factor(5).reference_t, std::pow(24.0, 1.0 / 6.0), 1e-12);
}

TEST(Santalo, BallArgumentBound) {
  // x = cosh u: the tail integral over [1, inf) becomes the integral of sinh(u) e^{-sinh u} du.
  double tail = 0.0;
  const int m = 2'000'000;
  const double U = 8.0;
  for (int i = 0; i < m; ++i) {
    const double u = (i + 0.5) * U / m;
    tail += std::sinh(u) * std::exp(-std::sinh(u)) * U / m;
  }
  const double inner = 2.0 * (1.0 + tail);
  EXPECT_NEAR(ball_argument_bound(1), inner * inner, 1e-3);
  for (int n = 2; n <= 4; ++n) EXPECT_GT(ball_argument_bound(n), 0.0);
  // n = 1 dominates the even closed-form products in one dimension.
  for (const auto& phi : {GeomCvxFn::gauge(ConvexBody::ball(1), 1.0),
                          GeomCvxFn::indicator(ConvexBody::cube(1)),
                          GeomCvxFn::power_gauge(ConvexBody::ball(1), 2.0, 0.5),
                          GeomCvxFn::hinged_gauge(ConvexBody::ball(1), 2.0)}) {
    EXPECT_GE(ball_argument_bound(1), santalo_product(phi).product) << phi.family_name();
  }
}

TEST(Santalo, GaugeOfBallBothBounds) {
  SantaloConfig cfg;
  cfg.c_test = 0.5;
  const auto v = verify_theorem(GeomCvxFn::gauge(ConvexBody::ball(2), 1.0), cfg);
  EXPECT_TRUE(v.lower_ok);
  EXPECT_TRUE(v.upper_checked);
  EXPECT_TRUE(v.upper_ok);
  EXPECT_NEAR(v.report.product, 4.0 * std::numbers::pi * std::numbers::pi, 1e-6);
}

TEST(Santalo, NonEvenSkipsUpperBound) {
  const auto v = verify_theorem(GeomCvxFn::gauge(ConvexBody::simplex(2), 1.0));
  EXPECT_TRUE(v.lower_ok);
  EXPECT_FALSE(v.upper_checked);
  EXPECT_TRUE(v.passed());
}

TEST(Santalo, CubeIndicatorLowerBound) {
  const auto v = verify_theorem(GeomCvxFn::indicator(ConvexBody::cube(3)));
  EXPECT_TRUE(v.lower_ok);
  EXPECT_NEAR(v.report.product, 32.0 / 3.0, 0.02 * 32.0 / 3.0);
  const double ball = 4.0 * std::numbers::pi / 3.0;
  EXPECT_NEAR(v.report.lower_bound_value, 0.7 * 0.125 * ball * ball, 1e-12);
}

TEST(Santalo, LinearInvariance) {
  Mat A(2, 2);
  A << 1.7, 0.4, -0.3, 0.9;
  const auto K = ConvexBody::cross_polytope(2);
  const double base = santalo_product(GeomCvxFn::gauge(K, 1.0)).product;
  const double moved = santalo_product(GeomCvxFn::gauge(ConvexBody::linear_image(A, K), 1.0)).product;
  EXPECT_NEAR(moved, base, 0.01 * base);
}

TEST(Santalo, SandwichRouteGivesInterval) {
  const auto phi = GeomCvxFn::max_of({GeomCvxFn::gauge(ConvexBody::cube(2), 1.0),
                                      GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5)});
  const auto r = santalo_product(phi);
  EXPECT_EQ(r.polar_route, "sandwich");
  EXPECT_LE(r.product_lo, r.product_hi);
  EXPECT_LE(r.integral_polar_lo, r.integral_polar_hi);
  EXPECT_TRUE(verify_theorem(r).passed());
}

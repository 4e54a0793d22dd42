#include <polarcvx/convex_body.hpp>
#include <polarcvx/errors.hpp>
#include <polarcvx/function.hpp>
#include <polarcvx/transforms.hpp>
#include <polarcvx/level_shape.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace polarcvx;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(GeomCvxFn, FamilyValues) {
  const ConvexBody K = ConvexBody::cube(2);
  const Vec x = v2(0.5, -1.5);  // ||x||_K = 1.5
  EXPECT_DOUBLE_EQ(GeomCvxFn::gauge(K, 2.0)(x), 3.0);
  EXPECT_TRUE(std::isinf(GeomCvxFn::indicator(K)(x)));
  EXPECT_EQ(GeomCvxFn::indicator(K)(v2(0.5, 0.5)), 0.0);
  EXPECT_DOUBLE_EQ(GeomCvxFn::hinged_gauge(K, 2.0)(x), 1.0);
  EXPECT_DOUBLE_EQ(GeomCvxFn::hinged_gauge(K, 2.0)(v2(0.1, 0.1)), 0.0);
  EXPECT_DOUBLE_EQ(GeomCvxFn::power_gauge(K, 2.0, 0.5)(x), 1.125);
  EXPECT_DOUBLE_EQ(GeomCvxFn::restricted_gauge(K, ConvexBody::ball(2, 2.0))(x), 1.5);
  EXPECT_TRUE(std::isinf(GeomCvxFn::restricted_gauge(K, ConvexBody::ball(2, 1.0))(x)));
  EXPECT_DOUBLE_EQ(GeomCvxFn::zero_set_gauge(K, ConvexBody::ball(2, 2.0))(x), 0.0);
  EXPECT_DOUBLE_EQ(GeomCvxFn::zero_set_gauge(K, ConvexBody::ball(2, 1.0))(x), 1.5);
  // Distance in the cube gauge from the ball of radius 0.5: (1.5 - 0.5) along the axis.
  EXPECT_NEAR(GeomCvxFn::gauge_distance(K, ConvexBody::ball(2, 0.5))(v2(0.0, 1.5)), 1.0, 1e-8);
  const auto mx = GeomCvxFn::max_of({GeomCvxFn::gauge(K, 1.0), GeomCvxFn::power_gauge(K, 2.0, 1.0)});
  EXPECT_DOUBLE_EQ(mx(x), 2.25);
  EXPECT_DOUBLE_EQ(mx(v2(0.1, 0.5)), 0.5);
}

TEST(GeomCvxFn, ZeroAtOriginAndNonnegative) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  const ConvexBody K = ConvexBody::simplex(2);
  const std::vector<GeomCvxFn> fs{GeomCvxFn::gauge(K, 1.0), GeomCvxFn::hinged_gauge(K, 3.0),
                                  GeomCvxFn::power_gauge(K, 1.5, 2.0),
                                  GeomCvxFn::gauge_distance(K, ConvexBody::cube(2, 0.3))};
  for (const auto& f : fs) {
    EXPECT_EQ(f(Vec::Zero(2)), 0.0) << f.family_name();
    for (int i = 0; i < 50; ++i) EXPECT_GE(f(v2(nd(rng), nd(rng))), 0.0);
  }
}

TEST(GeomCvxFn, ConvexAlongSegments) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  const auto f = GeomCvxFn::gauge_distance(ConvexBody::cross_polytope(2), ConvexBody::cube(2, 0.4));
  for (int i = 0; i < 100; ++i) {
    const Vec a = v2(nd(rng), nd(rng)), b = v2(nd(rng), nd(rng));
    EXPECT_LE(f(0.5 * (a + b)), 0.5 * (f(a) + f(b)) + 1e-7);
  }
}

TEST(GeomCvxFn, Evenness) {
  EXPECT_TRUE(is_even(GeomCvxFn::gauge(ConvexBody::cube(2), 1.0)));
  EXPECT_FALSE(is_even(GeomCvxFn::gauge(ConvexBody::simplex(2), 1.0)));
  EXPECT_TRUE(is_even(GeomCvxFn::power_gauge(ConvexBody::ball(3), 3.0, 1.0)));
}

TEST(GeomCvxFn, RejectsInvalidParameters) {
  EXPECT_THROW(GeomCvxFn::gauge(ConvexBody::cube(2), 0.0), InvalidArgument);
  EXPECT_THROW(GeomCvxFn::power_gauge(ConvexBody::cube(2), 0.5, 1.0), InvalidArgument);
  EXPECT_THROW(GeomCvxFn::max_of({GeomCvxFn::gauge(ConvexBody::cube(2), 1.0),
                                  GeomCvxFn::gauge(ConvexBody::cube(3), 1.0)}),
               DimensionMismatch);
  EXPECT_THROW(GeomCvxFn::gauge(ConvexBody::cube(2), 1.0)(Vec::Ones(3)), DimensionMismatch);
}

TEST(GeomCvxFn, DepthLimit) {
  GeomCvxFn f = GeomCvxFn::gauge(ConvexBody::cube(2), 1.0);
  for (int i = 0; i < kMaxFunctionDepth + 2; ++i) {
    f = GeomCvxFn::max_of({f, GeomCvxFn::indicator(ConvexBody::ball(2, 3.0))});
  }
  EXPECT_GT(f.depth(), kMaxFunctionDepth);
  EXPECT_THROW(polar_transform(f), DepthExceeded);
  EXPECT_THROW(integrability_certificate(f), DepthExceeded);
}

TEST(GeomCvxFn, SampledLookup) {
  const auto f = GeomCvxFn::sampled({v2(0, 0), v2(1, 0), v2(0, 2)}, {0.0, 1.5, 2.5});
  EXPECT_EQ(f(v2(1, 0)), 1.5);
  EXPECT_EQ(f(v2(0, 2)), 2.5);
  EXPECT_THROW(f(v2(0.5, 0.5)), OffGridQuery);
}

TEST(GeomCvxFn, RayClassification) {
  const auto dirs = std::vector<Vec>{v2(1, 0), v2(0, 1), v2(-0.6, 0.8)};
  const auto g = classify_rays(GeomCvxFn::gauge(ConvexBody::cube(2), 2.0), dirs);
  EXPECT_TRUE(g.all_equality_form);
  for (auto l : g.labels) EXPECT_EQ(l, RayLabel::linear);
  const auto ind = classify_rays(GeomCvxFn::indicator(ConvexBody::cube(2)), dirs);
  for (auto l : ind.labels) EXPECT_EQ(l, RayLabel::indicator);
  const auto pw = classify_rays(GeomCvxFn::power_gauge(ConvexBody::cube(2), 2.0, 1.0), dirs);
  EXPECT_FALSE(pw.all_equality_form);
}

TEST(GeomCvxFn, RaySublevelRadius) {
  const auto f = GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5);
  EXPECT_NEAR(ray_sublevel_radius(f, v2(0.6, 0.8), 2.0), 2.0, 1e-10);
  const auto slab = ConvexBody::halfspaces({v2(1, 0), v2(-1, 0)}, {1, 1}, Boundedness::allow_unbounded);
  EXPECT_TRUE(std::isinf(ray_sublevel_radius(GeomCvxFn::indicator(slab), v2(0, 1), 0.0)));
}

TEST(GeomCvxFn, IntegrabilityCertificate) {
  const auto f = GeomCvxFn::hinged_gauge(ConvexBody::cube(2), 2.0);
  const auto cert = integrability_certificate(f);
  EXPECT_GT(cert.epsilon, 0.0);
  EXPECT_GT(cert.ball_radius, 0.0);
  EXPECT_GT(cert.decay_c, 0.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    const Vec x = v2(nd(rng), nd(rng)) * 5.0;
    if (x.norm() >= cert.decay_r) EXPECT_LE(std::exp(-f(x)), std::exp(-cert.decay_c * x.norm()) + 1e-12);
  }
  const auto slab = ConvexBody::halfspaces({v2(1, 0), v2(-1, 0)}, {1, 1}, Boundedness::allow_unbounded);
  EXPECT_THROW(integrability_certificate(GeomCvxFn::indicator(slab)), NotIntegrable);
}

TEST(GeomCvxFn, PrecomposeLinear) {
  Mat A(2, 2);
  A << 2, 1, 0, 1;
  const auto f = GeomCvxFn::power_gauge(ConvexBody::cube(2), 1.5, 2.0);
  const auto g = precompose_linear(f, A);
  for (const Vec& x : {v2(0.3, 0.4), v2(-1, 2), v2(0.7, -0.1)}) EXPECT_NEAR(g(x), f(A * x), 1e-12);
}

TEST(LevelShape, ScaleLawsMatchSublevelRadii) {
  const ConvexBody K = ConvexBody::cross_polytope(2);
  const std::vector<GeomCvxFn> fs{GeomCvxFn::gauge(K, 1.5), GeomCvxFn::hinged_gauge(K, 2.0),
                                  GeomCvxFn::power_gauge(K, 3.0, 0.5),
                                  GeomCvxFn::restricted_gauge(K, ConvexBody::ball(2, 0.8))};
  for (const auto& f : fs) {
    const auto shape = level_shape(f);
    ASSERT_TRUE(shape.has_value());
    for (double s : {0.3, 1.0, 2.5}) {
      for (const Vec& th : {v2(1, 0), v2(0.6, 0.8), v2(-0.28, 0.96)}) {
        EXPECT_NEAR(shape->radius(th, s), ray_sublevel_radius(f, th, s), 1e-9) << f.family_name();
      }
    }
  }
}

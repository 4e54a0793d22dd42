#include "../oracles.hpp"

#include <polarcvx/convex_body.hpp>
#include <polarcvx/errors.hpp>
#include <polarcvx/function.hpp>
#include <polarcvx/transforms.hpp>

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

std::vector<GeomCvxFn> closed_families(const ConvexBody& K) {
  const int n = K.dim();
  return {GeomCvxFn::indicator(K),
          GeomCvxFn::gauge(K, 1.7),
          GeomCvxFn::restricted_gauge(K, ConvexBody::ball(n, 1.5)),
          GeomCvxFn::gauge_distance(K, ConvexBody::cube(n, 0.4)),
          GeomCvxFn::hinged_gauge(K, 2.0),
          GeomCvxFn::power_gauge(K, 1.0, 0.8),
          GeomCvxFn::power_gauge(K, 1.5, 1.0),
          GeomCvxFn::power_gauge(K, 3.0, 0.5)};
}

std::vector<Vec> query_points() {
  std::vector<Vec> out;
  for (double r : {0.3, 0.8, 1.3, 2.2}) {
    for (double a : {0.1, 1.2, 2.6, 4.4}) out.push_back(r * v2(std::cos(a), std::sin(a)));
  }
  return out;
}

double rel_gap(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST(Transforms, ClosedPolarMatchesGridSup) {
  // Independent brute-force sup on a zooming grid; away from kinks of the
  // extended-valued functions the two agree closely.
  for (const auto& K : {ConvexBody::cube(2), ConvexBody::ball(2), ConvexBody::simplex(2)}) {
    for (const auto& phi : closed_families(K)) {
      if (phi.family_name() == "indicator") continue;
      const auto polar = polar_transform(phi);
      const oracle::Fn f = [&](const std::vector<double>& y) { return phi(v2(y[0], y[1])); };
      for (const Vec& x : query_points()) {
        const double ref = oracle::compact_sup_polar(f, {x[0], x[1]});
        const double got = polar(x);
        if (std::isinf(got)) continue;
        EXPECT_NEAR(got, ref, 2e-3 * std::max(1.0, std::abs(ref)))
            << phi.family_name() << " at " << x.transpose();
      }
    }
  }
}

TEST(Transforms, ClosedFormsDominateNumericalSup) {
  // polar_sup / legendre_sup are lower bounds that converge to the closed forms.
  for (const auto& K : {ConvexBody::cross_polytope(2), ConvexBody::ball(2)}) {
    for (const auto& phi : closed_families(K)) {
      const auto polar = polar_transform(phi);
      const auto leg = legendre_transform(phi);
      for (const Vec& x : query_points()) {
        const double ps = polar_sup(phi, x), p = polar(x);
        const double ls = legendre_sup(phi, x), l = leg(x);
        if (std::isfinite(p)) {
          EXPECT_LE(ps, p + 1e-9) << phi.family_name();
          EXPECT_LT(rel_gap(ps, p), 1e-3) << phi.family_name() << " at " << x.transpose();
        }
        if (std::isfinite(l)) {
          EXPECT_LE(ls, l + 1e-9) << phi.family_name();
          EXPECT_LT(rel_gap(ls, l), 1e-3) << phi.family_name() << " at " << x.transpose();
        }
      }
    }
  }
}

TEST(Transforms, RoutingAndFlags) {
  const auto K = ConvexBody::cube(2);
  EXPECT_EQ(polar_transform(GeomCvxFn::gauge(K, 2.0)).family_name(), "gauge");
  EXPECT_EQ(polar_transform(GeomCvxFn::indicator(K)).family_name(), "indicator");
  EXPECT_EQ(legendre_transform(GeomCvxFn::indicator(K)).family_name(), "gauge");
  const auto mx = GeomCvxFn::max_of({GeomCvxFn::gauge(K, 1.0), GeomCvxFn::power_gauge(K, 2.0, 1.0)});
  EXPECT_FALSE(has_closed_polar(mx));
  const auto sampled = polar_transform(mx);
  EXPECT_EQ(sampled.family_name(), "sampled");
  const auto* table = std::get_if<SampledFn>(&sampled.family());
  ASSERT_NE(table, nullptr);
  EXPECT_TRUE(table->lower_bound_only);
}

TEST(Transforms, GaugePolarScaling) {
  const auto K = ConvexBody::simplex(2);
  const auto polar = polar_transform(GeomCvxFn::gauge(K, 2.0));
  for (const Vec& x : query_points()) EXPECT_NEAR(polar(x), K.polar().gauge(x) / 2.0, 1e-12);
}

TEST(Transforms, QuadraticIsSelfDual) {
  const auto q = GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5);
  const auto p = polar_transform(q), l = legendre_transform(q);
  for (const Vec& x : query_points()) {
    EXPECT_NEAR(p(x), 0.5 * x.squaredNorm(), 1e-12);
    EXPECT_NEAR(l(x), 0.5 * x.squaredNorm(), 1e-12);
  }
}

TEST(Transforms, SandwichBracketsPolar) {
  const auto K = ConvexBody::cube(2);
  for (const auto& phi : {GeomCvxFn::hinged_gauge(K, 1.5), GeomCvxFn::power_gauge(ConvexBody::ball(2), 3.0, 1.0),
                          GeomCvxFn::restricted_gauge(K, ConvexBody::ball(2, 2.0))}) {
    const auto exact = polar_transform(phi);
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto sw = sandwich(phi, t);
      for (const Vec& x : query_points()) {
        EXPECT_LE(sw.lower(x), exact(x) + 1e-9) << phi.family_name() << " t=" << t;
        EXPECT_GE(sw.upper(x), exact(x) - 1e-9) << phi.family_name() << " t=" << t;
      }
    }
  }
  const auto mx = GeomCvxFn::max_of({GeomCvxFn::gauge(K, 1.0), GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5)});
  for (double t : {0.5, 1.0, 2.0}) {
    const auto sw = sandwich(mx, t);
    for (const Vec& x : query_points()) EXPECT_GE(sw.upper(x), polar_sup(mx, x) - 1e-9);
  }
}

TEST(Transforms, SampledTransformsAreLowerBounds) {
  const auto phi = GeomCvxFn::hinged_gauge(ConvexBody::cube(2), 1.5);
  const auto exact = polar_transform(phi);
  const auto table = polar_transform_sampled(phi);
  for (const Vec& x : default_query_points(2)) {
    const double e = exact(x), s = table(x);
    if (std::isfinite(e)) EXPECT_LE(s, e + 1e-9);
  }
}

TEST(Transforms, BallPointwiseInequality) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  const auto phi = GeomCvxFn::power_gauge(ConvexBody::cube(2), 1.5, 1.0);
  const auto polar = polar_transform(phi);
  for (int i = 0; i < 2000; ++i) {
    const Vec x = v2(nd(rng), nd(rng)) * 2.0, y = v2(nd(rng), nd(rng)) * 2.0;
    EXPECT_TRUE(ball_pointwise_inequality(phi, polar, x, y));
    const double lhs = 0.5 * (phi(x) + polar(y));
    EXPECT_GE(lhs + 1e-12, std::sqrt(std::max(0.0, x.dot(y) - 1.0)));
  }
}

TEST(Transforms, EqualityFormPolarForHomotheticBodies) {
  const auto K = ConvexBody::cube(2);
  const auto L = ConvexBody::cube(2, 2.0);
  const auto polar = polar_transform(GeomCvxFn::restricted_gauge(K, L));
  for (const Vec& x : query_points()) EXPECT_NEAR(equality_form_polar(K, L, x), polar(x), 1e-7);
}

TEST(Transforms, DefaultQueryPoints) {
  const auto pts = default_query_points(3, 2.0);
  EXPECT_FALSE(pts.empty());
  EXPECT_TRUE(pts.front().isZero() || pts.back().isZero() ||
              std::any_of(pts.begin(), pts.end(), [](const Vec& p) { return p.isZero(); }));
}

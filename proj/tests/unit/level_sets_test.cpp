#include <polarcvx/convex_body.hpp>
#include <polarcvx/errors.hpp>
#include <polarcvx/function.hpp>
#include <polarcvx/level_sets.hpp>
#include <polarcvx/transforms.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace polarcvx;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(LevelSets, SublevelRadii) {
  const auto dirs = default_levelset_directions(2);
  EXPECT_EQ(dirs.size(), 364u);
  const auto q = sublevel_set(GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5), 2.0, dirs);
  for (double r : q.radii) EXPECT_NEAR(r, 2.0, 1e-12);
  const auto K = ConvexBody::cube(2);
  const auto g = sublevel_set(GeomCvxFn::gauge(K, 2.0), 3.0, dirs);
  for (std::size_t j = 0; j < dirs.size(); ++j) EXPECT_NEAR(g.radii[j], 1.5 * K.radial(dirs[j]), 1e-12);
  EXPECT_TRUE(g.bounded());
}

TEST(LevelSets, SublevelMonotoneInLevel) {
  const auto dirs = default_levelset_directions(2);
  const auto phi = GeomCvxFn::gauge_distance(ConvexBody::cross_polytope(2), ConvexBody::ball(2, 0.3));
  const auto a = sublevel_set(phi, 0.5, dirs), b = sublevel_set(phi, 1.5, dirs);
  for (std::size_t j = 0; j < dirs.size(); ++j) EXPECT_LE(a.radii[j], b.radii[j] + 1e-12);
}

TEST(LevelSets, SuperlevelOfDensity) {
  const auto dirs = default_levelset_directions(2);
  const auto phi = GeomCvxFn::gauge(ConvexBody::ball(2), 1.0);
  const auto s = superlevel_of_density(phi, std::exp(-2.0), dirs);
  for (double r : s.radii) EXPECT_NEAR(r, 2.0, 1e-12);
  EXPECT_THROW(superlevel_of_density(phi, 0.0, dirs), InvalidArgument);
  EXPECT_THROW(superlevel_of_density(phi, 1.5, dirs), InvalidArgument);
}

TEST(LevelSets, RejectsNonUnitDirections) {
  EXPECT_THROW(sublevel_set(GeomCvxFn::gauge(ConvexBody::ball(2), 1.0), 1.0, {v2(1, 1)}), InvalidArgument);
}

TEST(LevelSets, GaugeEqualityCase) {
  const auto dirs = default_levelset_directions(2);
  const auto phi = GeomCvxFn::gauge(ConvexBody::simplex(2), 1.3);
  for (double s : {0.5, 2.0}) {
    const auto rep = verify_polar_levelsets(phi, s, 1.0, dirs);
    EXPECT_TRUE(rep.verdict());
    EXPECT_EQ(rep.route, "closed_form");
    for (double m : rep.first_margins) EXPECT_NEAR(m, 0.0, 1e-9);
  }
}

TEST(LevelSets, QuadraticFirstInclusionIsStrict) {
  const auto dirs = default_levelset_directions(2);
  const auto rep = verify_polar_levelsets(GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5), 1.0, 1.0, dirs);
  EXPECT_TRUE(rep.verdict());
  EXPECT_GT(rep.worst_first, 1e-3);
}

TEST(LevelSets, SandwichRouteForMaxOf) {
  const auto dirs = default_levelset_directions(2);
  const auto phi = GeomCvxFn::max_of({GeomCvxFn::gauge(ConvexBody::cube(2), 1.0),
                                      GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5)});
  for (double s : {0.5, 1.0, 2.0}) {
    for (double t : {0.5, 2.0}) {
      const auto p = verify_polar_levelsets(phi, s, t, dirs);
      const auto l = verify_legendre_levelsets(phi, s, t, dirs);
      EXPECT_EQ(p.route, "sandwich");
      EXPECT_TRUE(p.verdict()) << s << " " << t;
      EXPECT_TRUE(l.verdict()) << s << " " << t;
    }
  }
}

TEST(LevelSets, LegendrePolarIdentity) {
  const auto dirs = default_levelset_directions(3);
  for (const auto& phi : {GeomCvxFn::hinged_gauge(ConvexBody::cube(3), 2.0),
                          GeomCvxFn::power_gauge(ConvexBody::cross_polytope(3), 1.5, 0.7),
                          GeomCvxFn::indicator(ConvexBody::ball(3, 0.5))}) {
    for (double c : {0.3, 1.0, 3.0}) EXPECT_LE(legendre_polar_identity(phi, c, dirs), 1e-9);
  }
  const auto mx = GeomCvxFn::max_of({GeomCvxFn::gauge(ConvexBody::cube(3), 1.0), GeomCvxFn::indicator(ConvexBody::ball(3, 2.0))});
  EXPECT_THROW(legendre_polar_identity(mx, 1.0, dirs), Unsupported);
}

TEST(LevelSets, VolumeSandwich) {
  for (const auto& phi : {GeomCvxFn::gauge(ConvexBody::cube(2), 1.0),
                          GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5),
                          GeomCvxFn::hinged_gauge(ConvexBody::cross_polytope(2), 1.5)}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto r = volume_sandwich_check(phi, t);
      EXPECT_TRUE(r.verdict()) << phi.family_name() << " t=" << t;
      EXPECT_LE(r.level_polar.lo(), r.polar_level.hi());
    }
  }
}

TEST(LevelSets, NonConvexLevelSetsUnsupported) {
  const auto dirs = default_levelset_directions(2);
  const auto z = GeomCvxFn::zero_set_gauge(ConvexBody::cube(2), ConvexBody::ball(2, 0.5));
  EXPECT_THROW(verify_polar_levelsets(z, 1.0, 1.0, dirs), Unsupported);
  EXPECT_THROW(verify_polar_levelsets(GeomCvxFn::gauge(ConvexBody::cube(2), 1.0), 0.0, 1.0, dirs),
               InvalidArgument);
}

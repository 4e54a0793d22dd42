#include "polarcvx/level_sets.hpp"

#include "polarcvx/directions.hpp"
#include "polarcvx/errors.hpp"
#include "polarcvx/level_shape.hpp"
#include "polarcvx/parallel.hpp"
#include "polarcvx/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace polarcvx {

namespace {

double margin(double lhs, double rhs) {
  if (std::isinf(rhs)) return std::isinf(lhs) ? 0.0 : 1.0;
  if (std::isinf(lhs)) return -1.0;
  return (rhs - lhs) / std::max(1.0, std::abs(rhs));
}

// Radius of the polar of a level body: 1 / h_{K}(theta).
double polar_radius(const LevelShape& shape, const Vec& theta, double level) {
  const double h = shape.support(theta, level);
  return h > 0.0 ? 1.0 / h : kInf;
}

LevelShape convex_shape(const GeomCvxFn& phi) {
  auto shape = level_shape(phi);
  if (!shape) throw Unsupported("level sets of a sampled function");
  if (!shape->convex()) throw Unsupported("level sets are not convex for this family");
  return *shape;
}

void require_level(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

void finish(LevelSetReport& rep, const std::vector<Vec>& dirs, double tol) {
  rep.worst_first = kInf;
  rep.worst_second = kInf;
  std::size_t worst = 0;
  double worst_any = kInf;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    rep.worst_first = std::min(rep.worst_first, rep.first_margins[j]);
    rep.worst_second = std::min(rep.worst_second, rep.second_margins[j]);
    const double m = std::min(rep.first_margins[j], rep.second_margins[j]);
    if (m < worst_any) {
      worst_any = m;
      worst = j;
    }
  }
  rep.first_ok = rep.worst_first >= -tol;
  rep.second_ok = rep.worst_second >= -tol;
  if (!dirs.empty()) rep.worst_direction = dirs[worst];
}

// lhs(j) <= mid_lo(j) and mid_hi(j) <= rhs(j), radially.
template <class Lhs, class MidLo, class MidHi, class Rhs>
LevelSetReport radial_report(double s, double t, const std::vector<Vec>& dirs, double tol,
                             Lhs&& lhs, MidLo&& mid_lo, MidHi&& mid_hi, Rhs&& rhs) {
  LevelSetReport rep;
  rep.s = s;
  rep.t = t;
  rep.first_margins.resize(dirs.size());
  rep.second_margins.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t j) {
    const Vec& th = dirs[j];
    rep.first_margins[j] = margin(lhs(th), mid_lo(th));
    rep.second_margins[j] = margin(mid_hi(th), rhs(th));
  });
  finish(rep, dirs, tol);
  return rep;
}

}  // namespace

bool RadialSet::bounded() const {
  return std::all_of(radii.begin(), radii.end(), [](double r) { return std::isfinite(r); });
}

std::vector<Vec> default_levelset_directions(int n) {
  if (n == 1) return sphere_directions(1, 2);
  auto dirs = coordinate_directions(n);
  auto more = sphere_directions(n, default_levelset_direction_count(n));
  dirs.insert(dirs.end(), more.begin(), more.end());
  return dirs;
}

RadialSet sublevel_set(const GeomCvxFn& phi, double t, const std::vector<Vec>& directions) {
  if (!(t >= 0.0)) throw InvalidArgument("level t must be >= 0");
  check_depth(phi);
  RadialSet out;
  out.dim = phi.dim();
  out.directions = directions;
  out.radii.resize(directions.size());
  for (const Vec& d : directions) {
    if (d.size() != out.dim) throw DimensionMismatch(out.dim, static_cast<int>(d.size()));
    if (std::abs(d.norm() - 1.0) > 1e-12) throw InvalidArgument("directions must be unit vectors");
  }
  const auto shape = level_shape(phi);
  parallel_for(directions.size(), [&](std::size_t j) {
    out.radii[j] = shape ? shape->radius(directions[j], t)
                         : ray_sublevel_radius(phi, directions[j], t);
  });
  return out;
}

RadialSet superlevel_of_density(const GeomCvxFn& phi, double u,
                                const std::vector<Vec>& directions) {
  if (!(u > 0.0 && u <= 1.0)) throw InvalidArgument("density level must lie in (0, 1]");
  return sublevel_set(phi, std::log(1.0 / u), directions);
}

LevelSetReport verify_polar_levelsets(const GeomCvxFn& phi, double s, double t,
                                      const std::vector<Vec>& directions, double tol) {
  require_level(s, "s");
  require_level(t, "t");
  check_depth(phi);
  const LevelShape shape = convex_shape(phi);
  auto lhs = [&](const Vec& th) { return polar_radius(shape, th, 1.0 / s); };
  auto rhs = [&](const Vec& th) { return (s * t + 1.0) * polar_radius(shape, th, t); };
  if (has_closed_polar(phi)) {
    const LevelShape ps = convex_shape(polar_transform(phi));
    auto mid = [&](const Vec& th) { return ps.radius(th, s); };
    auto rep = radial_report(s, t, directions, tol, lhs, mid, mid, rhs);
    rep.route = "closed_form";
    return rep;
  }
  // phi° is only bracketed: psi_upper <= ... shrinks the level set, so the first
  // inclusion is tested against it; the second against psi_lower's larger set.
  const LevelShape upper = convex_shape(sandwich(phi, 1.0 / s).upper);
  const LevelShape lower = convex_shape(sandwich(phi, t).lower);
  auto mid_lo = [&](const Vec& th) { return upper.radius(th, s); };
  auto mid_hi = [&](const Vec& th) { return lower.radius(th, s); };
  auto rep = radial_report(s, t, directions, tol, lhs, mid_lo, mid_hi, rhs);
  rep.route = "sandwich";
  return rep;
}

LevelSetReport verify_legendre_levelsets(const GeomCvxFn& phi, double s, double t,
                                         const std::vector<Vec>& directions, double tol) {
  require_level(s, "s");
  require_level(t, "t");
  check_depth(phi);
  const LevelShape shape = convex_shape(phi);
  auto lhs = [&](const Vec& th) { return s * polar_radius(shape, th, s); };
  auto rhs = [&](const Vec& th) { return (s + t) * polar_radius(shape, th, t); };
  if (has_closed_legendre(phi)) {
    const LevelShape ls = convex_shape(legendre_transform(phi));
    auto mid = [&](const Vec& th) { return ls.radius(th, s); };
    auto rep = radial_report(s, t, directions, tol, lhs, mid, mid, rhs);
    rep.route = "closed_form";
    return rep;
  }
  // K_s(L phi) = s K_{1/s}(phi°), bracketed through the polar sandwich.
  const LevelShape upper = convex_shape(sandwich(phi, s).upper);
  const LevelShape lower = convex_shape(sandwich(phi, t).lower);
  auto mid_lo = [&](const Vec& th) { return s * upper.radius(th, 1.0 / s); };
  auto mid_hi = [&](const Vec& th) { return s * lower.radius(th, 1.0 / s); };
  auto rep = radial_report(s, t, directions, tol, lhs, mid_lo, mid_hi, rhs);
  rep.route = "sandwich";
  return rep;
}

double legendre_polar_identity(const GeomCvxFn& phi, double c,
                               const std::vector<Vec>& directions) {
  require_level(c, "c");
  if (!has_closed_polar(phi) || !has_closed_legendre(phi)) {
    throw Unsupported("identity check needs closed-form polar and Legendre transforms");
  }
  const LevelShape ls = convex_shape(legendre_transform(phi));
  const LevelShape ps = convex_shape(polar_transform(phi));
  std::vector<double> gap(directions.size());
  parallel_for(directions.size(), [&](std::size_t j) {
    const double a = ls.radius(directions[j], c);
    const double b = c * ps.radius(directions[j], 1.0 / c);
    if (std::isinf(a) || std::isinf(b)) {
      gap[j] = (std::isinf(a) && std::isinf(b)) ? 0.0 : kInf;
    } else {
      gap[j] = std::abs(a - b);
    }
  });
  return gap.empty() ? 0.0 : *std::max_element(gap.begin(), gap.end());
}

VolumeSandwichReport volume_sandwich_check(const GeomCvxFn& phi, double t,
                                           const VolumeConfig& cfg) {
  require_level(t, "t");
  check_depth(phi);
  const int n = phi.dim();
  const LevelShape shape = convex_shape(phi);
  VolumeSandwichReport rep;
  rep.t = t;
  rep.level = shape.volume(1.0 / t, cfg);
  rep.level_polar = body_volume(shape.body(1.0 / t).polar(), cfg);
  if (has_closed_polar(phi)) {
    rep.polar_level = convex_shape(polar_transform(phi)).volume(t, cfg);
    rep.polar_level_upper = rep.polar_level;
    rep.route = "closed_form";
  } else {
    const auto sw = sandwich(phi, 1.0 / t);
    rep.polar_level = convex_shape(sw.upper).volume(t, cfg);
    rep.polar_level_upper = convex_shape(sw.lower).volume(t, cfg);
    rep.route = "sandwich";
  }
  const double two_n = std::pow(2.0, n);
  rep.lower_ok = rep.level_polar.lo() <= rep.polar_level.hi();
  rep.upper_ok = rep.polar_level_upper.lo() <= two_n * rep.level_polar.hi();
  rep.printed_lower_ok = rep.level.lo() <= rep.polar_level.hi();
  rep.printed_upper_ok = rep.polar_level_upper.lo() <= two_n * rep.level.hi();
  return rep;
}

}  // namespace polarcvx

#pragma once

#include "polarcvx/convex_body.hpp"
#include "polarcvx/function.hpp"

#include <cstddef>
#include <vector>

namespace polarcvx {

// Global sample for the sup in the transform definitions: quasi-uniform
// directions times log-spaced radii, then pattern-search refinement around
// the best sample point.
struct SupOptions {
  std::size_t directions = 0;  // 0: 2 (n=1), 128 (n=2), 512 (n=3), 1024 otherwise
  std::size_t radii = 0;       // 0: 4096 n / directions
  double min_radius = 1e-3;    // relative to the level-1 extent of phi
  double max_radius = 1e6;
  int refine_rounds = 20;
};

struct TransformOptions {
  SupOptions sup;
  // Points at which a Sampled result is tabulated; empty selects
  // default_query_points.
  std::vector<Vec> query;
};

/// sup over `sample` of ext_div(<x,y> - 1, phi(y)); a lower bound on phi°(x).
double polar_pointwise(const GeomCvxFn& phi, const Vec& x, const std::vector<Vec>& sample);
/// sup over `sample` of <x,y> - phi(y); a lower bound on the Legendre transform.
double legendre_pointwise(const GeomCvxFn& phi, const Vec& x, const std::vector<Vec>& sample);

std::vector<Vec> sup_sample(const GeomCvxFn& phi, const SupOptions& opts, bool for_polar);

// Global sample plus refinement. Still a lower bound.
double polar_sup(const GeomCvxFn& phi, const Vec& x, const SupOptions& opts = {});
double legendre_sup(const GeomCvxFn& phi, const Vec& x, const SupOptions& opts = {});

// Directions (coordinate and quasi-uniform) times radii {0.25,...,4} * scale,
// plus the origin.
std::vector<Vec> default_query_points(int n, double scale = 1.0);

bool has_closed_polar(const GeomCvxFn& phi);
bool has_closed_legendre(const GeomCvxFn& phi);

/// phi°. Exact for every closed-form family except MaxOf and ZeroSetGauge;
/// those (and Sampled inputs) return a Sampled table flagged lower-bound-only.
GeomCvxFn polar_transform(const GeomCvxFn& phi, const TransformOptions& opts = {});
/// The Legendre transform, with the same routing as polar_transform.
GeomCvxFn legendre_transform(const GeomCvxFn& phi, const TransformOptions& opts = {});

GeomCvxFn polar_transform_sampled(const GeomCvxFn& phi, const TransformOptions& opts = {});
GeomCvxFn legendre_transform_sampled(const GeomCvxFn& phi, const TransformOptions& opts = {});

struct SandwichPair {
  GeomCvxFn lower;  // max(0, ||x||_{K°}/t - 1/t), K = {phi <= t}
  GeomCvxFn upper;  // ||x||_{K°}/t on K°, +inf outside
  double level_t;
};

/// lower <= phi° <= upper, built from the level-t body of phi.
SandwichPair sandwich(const GeomCvxFn& phi, double t);

/// (phi(x) + phi°(y)) / 2 >= sqrt((<x,y> - 1)_+). Needs a closed-form polar.
bool ball_pointwise_inequality(const GeomCvxFn& phi, const Vec& x, const Vec& y);
bool ball_pointwise_inequality(const GeomCvxFn& phi, const GeomCvxFn& polar, const Vec& x,
                               const Vec& y);

/// 0 on L°, ||x||_{K°} (1 - 1/||x||_{L°}) off L°. Coincides with the polar of
/// RestrictedGauge(K, L) when K and L are homothetic.
double equality_form_polar(const ConvexBody& K, const ConvexBody& L, const Vec& x);

}  // namespace polarcvx

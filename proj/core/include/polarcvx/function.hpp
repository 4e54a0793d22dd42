#pragma once

#include "polarcvx/convex_body.hpp"
#include "polarcvx/types.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polarcvx {

class GeomCvxFn;

// 0 on K, +inf off K.
struct IndicatorFn {
  ConvexBody body;
};

// t * ||x||_K.
struct GaugeFn {
  ConvexBody body;
  double t = 1.0;
};

// ||x||_K on L, +inf off L.
struct RestrictedGaugeFn {
  ConvexBody gauge_body;
  ConvexBody domain;
};

// 0 on L, ||x||_K off L. Not convex in general; evaluable only.
struct ZeroSetGaugeFn {
  ConvexBody gauge_body;
  ConvexBody zero_set;
};

// max(0, a ||x||_K - a).
struct HingedGaugeFn {
  ConvexBody body;
  double a = 1.0;
};

// scale * ||x||_K^p, p >= 1.
struct PowerGaugeFn {
  ConvexBody body;
  double p = 2.0;
  double scale = 0.5;
};

struct MaxOfFn {
  std::vector<std::shared_ptr<const GeomCvxFn>> parts;
};

// Table of values; only its own points can be evaluated.
struct SampledFn {
  std::vector<Vec> points;
  std::vector<double> values;
  bool lower_bound_only = false;
  std::vector<std::size_t> order;  // indices sorted by first coordinate
};

// min_{z in S} ||x - z||_M: the infimal convolution of 1_S and ||.||_M.
struct GaugeDistanceFn {
  ConvexBody gauge_body;
  ConvexBody center;
};

using FnFamily = std::variant<IndicatorFn, GaugeFn, RestrictedGaugeFn, ZeroSetGaugeFn,
                              HingedGaugeFn, PowerGaugeFn, MaxOfFn, SampledFn, GaugeDistanceFn>;

/// A geometric convex function: phi >= 0, phi(0) = 0, convex, lsc, with
/// values in [0, +inf]. Immutable; copies share state.
class GeomCvxFn {
 public:
  static GeomCvxFn indicator(ConvexBody K);
  static GeomCvxFn gauge(ConvexBody K, double t = 1.0);
  static GeomCvxFn restricted_gauge(ConvexBody K, ConvexBody L);
  static GeomCvxFn zero_set_gauge(ConvexBody K, ConvexBody L);
  static GeomCvxFn hinged_gauge(ConvexBody K, double a);
  static GeomCvxFn power_gauge(ConvexBody K, double p, double scale);
  static GeomCvxFn max_of(std::vector<GeomCvxFn> parts);
  static GeomCvxFn sampled(std::vector<Vec> points, std::vector<double> values,
                           bool lower_bound_only = false);
  static GeomCvxFn gauge_distance(ConvexBody M, ConvexBody S);

  int dim() const { return dim_; }
  // 1 for leaves, 1 + max child depth for MaxOf.
  int depth() const { return depth_; }
  const FnFamily& family() const { return *family_; }
  std::string_view family_name() const;

  double operator()(const Vec& x) const;

 private:
  GeomCvxFn(int dim, int depth, std::shared_ptr<const FnFamily> family)
      : dim_(dim), depth_(depth), family_(std::move(family)) {}
  int dim_;
  int depth_;
  std::shared_ptr<const FnFamily> family_;
};

double evaluate(const GeomCvxFn& phi, const Vec& x);

// Throws DepthExceeded when phi nests MaxOf beyond kMaxFunctionDepth.
void check_depth(const GeomCvxFn& phi);

// Family is closed-form (everything except Sampled) and known convex
// (everything except ZeroSetGauge).
bool is_closed_form(const GeomCvxFn& phi);

bool is_even(const GeomCvxFn& phi);

enum class RayLabel { linear, indicator, other };
std::string_view to_string(RayLabel label);

struct RayClassification {
  std::vector<RayLabel> labels;
  bool all_equality_form = true;
};

RayClassification classify_rays(const GeomCvxFn& phi, const std::vector<Vec>& directions);

/// sup{r >= 0 : phi(r theta) <= t} by doubling (cap 2^40, reported as +inf)
/// then 60 bisection steps. Relies on phi being nondecreasing along rays.
double ray_sublevel_radius(const GeomCvxFn& phi, const Vec& theta, double t);

struct IntegrabilityCertificate {
  double epsilon = 0.0;
  Vec ball_center;
  double ball_radius = 0.0;
  double decay_c = 0.0;
  double decay_r = 0.0;
};

/// Witness that e^{-phi} is integrable with positive integral: eps * 1_B <=
/// e^{-phi} and e^{-phi(x)} <= e^{-c|x|} for |x| >= r. Throws NotIntegrable
/// when phi vanishes on a whole ray or has lower-dimensional support.
IntegrabilityCertificate integrability_certificate(const GeomCvxFn& phi);

}  // namespace polarcvx

namespace polarcvx {

// x -> phi(A x) for invertible A; every body K becomes A^{-1} K.
GeomCvxFn precompose_linear(const GeomCvxFn& phi, const Mat& A);

}  // namespace polarcvx

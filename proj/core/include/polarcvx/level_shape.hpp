#pragma once

#include "polarcvx/convex_body.hpp"
#include "polarcvx/function.hpp"
#include "polarcvx/volume.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace polarcvx {

// s -> (a0 + a1 s)^gamma, the dilation factor of a body across levels.
struct ScaleLaw {
  double a0 = 0.0;
  double a1 = 1.0;
  double gamma = 1.0;

  double operator()(double s) const;
  bool affine() const { return gamma == 1.0; }
  bool constant() const { return a1 == 0.0; }
};

/// Exact description of the sublevel sets s -> {phi <= s} of a closed-form
/// function as an expression over fixed bodies: dilations, intersections,
/// Minkowski sums and (for the non-convex ZeroSetGauge) unions.
class LevelShape {
 public:
  enum class Kind { scaled, intersection, sum, union_of };

  static LevelShape scaled(ConvexBody body, ScaleLaw law);
  static LevelShape intersection(std::vector<LevelShape> parts);
  static LevelShape sum(std::vector<LevelShape> parts);
  static LevelShape union_of(std::vector<LevelShape> parts);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const ConvexBody& base() const { return *base_; }
  const ScaleLaw& law() const { return law_; }
  const std::vector<LevelShape>& children() const { return children_; }

  bool convex() const;
  // Radius is a min/max of leaf radii (no Minkowski sums).
  bool radially_separable() const;
  // |shape(s)| is a polynomial of degree <= n in s (sums of affine dilations).
  bool polynomial_volume() const;
  bool constant() const;

  double radius(const Vec& theta, double s) const;
  double support(const Vec& u, double s) const;
  // Throws InvalidArgument when the level set is lower-dimensional at s.
  ConvexBody body(double s) const;

  IntegralEstimate volume(double s, const VolumeConfig& cfg = {}) const;

  // Leaves in depth-first order.
  void leaves(std::vector<const LevelShape*>& out) const;

 private:
  LevelShape() = default;
  double radius_from_leaves(const double*& leaf_radii, double s) const;
  friend class RadialProfile;

  Kind kind_ = Kind::scaled;
  int dim_ = 0;
  std::shared_ptr<const ConvexBody> base_;
  ScaleLaw law_;
  std::vector<LevelShape> children_;
};

/// Sublevel shape of phi, or nullopt for Sampled tables.
std::optional<LevelShape> level_shape(const GeomCvxFn& phi);

/// Leaf radii of a radially separable shape precomputed on a RadialRule, so
/// volumes at many levels cost O(directions) each.
class RadialProfile {
 public:
  RadialProfile(const LevelShape& shape, RadialRule rule);
  IntegralEstimate volume(double s) const;
  const RadialRule& rule() const { return rule_; }

 private:
  LevelShape shape_;
  RadialRule rule_;
  std::size_t leaf_count_ = 0;
  std::vector<double> full_;  // direction-major, leaf_count_ per direction
  std::vector<double> half_;
};

}  // namespace polarcvx

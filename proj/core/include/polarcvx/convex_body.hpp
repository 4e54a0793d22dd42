#pragma once

#include "polarcvx/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polarcvx {

enum class NamedShape { cube, euclidean_ball, cross_polytope, simplex_centered };

std::string_view to_string(NamedShape shape);
std::optional<NamedShape> named_shape_from_string(std::string_view name);

enum class Boundedness { require_bounded, allow_unbounded };

struct BodyRep;
namespace detail {
struct BodyImpl;
}

/// A closed convex set in R^n with the origin in its interior.
///
/// Immutable value type; copies share state. gauge() and support() are exact
/// for vertex, halfspace, named and linear-image representations; the
/// intersection support and Minkowski-sum gauge go through a certified
/// ellipsoid solve (relative gap 1e-12).
class ConvexBody {
 public:
  static ConvexBody vertices(std::vector<Vec> vertices);
  static ConvexBody halfspaces(std::vector<Vec> normals, std::vector<double> offsets,
                               Boundedness boundedness = Boundedness::require_bounded);
  static ConvexBody named(NamedShape shape, int dim, double scale = 1.0);
  static ConvexBody cube(int dim, double scale = 1.0) { return named(NamedShape::cube, dim, scale); }
  static ConvexBody ball(int dim, double scale = 1.0) {
    return named(NamedShape::euclidean_ball, dim, scale);
  }
  static ConvexBody cross_polytope(int dim, double scale = 1.0) {
    return named(NamedShape::cross_polytope, dim, scale);
  }
  static ConvexBody simplex(int dim, double scale = 1.0) {
    return named(NamedShape::simplex_centered, dim, scale);
  }
  // A * base.
  static ConvexBody linear_image(const Mat& A, const ConvexBody& base);
  static ConvexBody intersection(std::vector<ConvexBody> parts);
  // sum_i weights[i] * parts[i]
  static ConvexBody minkowski_sum(std::vector<ConvexBody> parts, std::vector<double> weights);

  int dim() const;
  bool bounded() const;
  const BodyRep& representation() const;

  // Minkowski functional inf{r > 0 : x in rK}; +inf never occurs (origin interior).
  double gauge(const Vec& x) const;
  // sup_{y in K} <u, y>; requires a bounded body.
  double support(const Vec& u) const;
  // An element of the subdifferential of the gauge at x (a point of K° attaining <x, .> = gauge).
  Vec gauge_subgradient(const Vec& x) const;
  // A point of K attaining the support value in direction u.
  Vec support_point(const Vec& u) const;
  // sup{r >= 0 : r theta in K} for unit theta; +inf along recession directions.
  double radial(const Vec& theta) const;
  bool contains(const Vec& x, double tol = kGeomTol) const;

  ConvexBody polar() const;
  ConvexBody scaled(double lambda) const;

  // r with rB ⊆ K and R with K ⊆ RB. Exact for vertex/halfspace/named bodies,
  // valid bounds otherwise.
  double inner_radius() const;
  double outer_radius() const;

  // Structural symmetry: true when the representation is closed under x -> -x,
  // false when it is known not to be, nullopt when undecided.
  std::optional<bool> structurally_symmetric() const;

  std::string describe() const;

 private:
  explicit ConvexBody(std::shared_ptr<const detail::BodyImpl> impl);
  static ConvexBody polar_of(const ConvexBody& base);
  std::shared_ptr<const detail::BodyImpl> impl_;
};

struct VertexRep {
  std::vector<Vec> vertices;
};

struct HalfspaceRep {
  std::vector<Vec> normals;
  std::vector<double> offsets;  // <normals[i], x> <= offsets[i], offsets > 0
};

struct NamedRep {
  NamedShape shape;
  double scale;
};

struct LinearRep {
  Mat matrix;
  Mat inverse;
  ConvexBody base;
};

struct IntersectionRep {
  std::vector<ConvexBody> parts;
};

struct SumRep {
  std::vector<ConvexBody> parts;
  std::vector<double> weights;
};

struct PolarRep {
  ConvexBody base;
};

struct BodyRep {
  std::variant<VertexRep, HalfspaceRep, NamedRep, LinearRep, IntersectionRep, SumRep, PolarRep> value;
};

/// |B_2^n| = pi^{n/2} / Gamma(n/2 + 1).
double ball_volume(int n);

/// Vertices of the regular simplex with centroid at the origin and unit
/// circumradius.
std::vector<Vec> unit_simplex_vertices(int n);

}  // namespace polarcvx

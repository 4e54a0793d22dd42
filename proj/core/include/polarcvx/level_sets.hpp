#pragma once

#include "polarcvx/function.hpp"
#include "polarcvx/volume.hpp"

#include <string>
#include <vector>

namespace polarcvx {

/// Direction/radius description of a star-shaped set. `inner` means the hull
/// of the points r_j theta_j lies inside the source set.
struct RadialSet {
  enum class Kind { inner, outer };
  int dim = 0;
  std::vector<Vec> directions;
  std::vector<double> radii;  // +inf marks an unbounded ray
  Kind kind = Kind::inner;

  bool bounded() const;
};

// Coordinate directions followed by default_levelset_direction_count(n)
// quasi-uniform directions (just {+1, -1} for n = 1).
std::vector<Vec> default_levelset_directions(int n);

/// {phi <= t} radially. Closed-form families use their exact level shape,
/// everything else bisects along rays.
RadialSet sublevel_set(const GeomCvxFn& phi, double t, const std::vector<Vec>& directions);

/// {e^{-phi} >= u} = {phi <= ln(1/u)}, 0 < u <= 1.
RadialSet superlevel_of_density(const GeomCvxFn& phi, double u,
                                const std::vector<Vec>& directions);

struct LevelSetReport {
  double s = 0.0;
  double t = 0.0;
  // Per direction: (rhs - lhs) / max(1, rhs) for each inclusion.
  std::vector<double> first_margins;
  std::vector<double> second_margins;
  bool first_ok = false;
  bool second_ok = false;
  double worst_first = 0.0;
  double worst_second = 0.0;
  Vec worst_direction;
  std::string route;  // "closed_form" or "sandwich"

  bool verdict() const { return first_ok && second_ok; }
};

/// Checks (K_{1/s} phi)° ⊆ K_s(phi°) ⊆ (st + 1)(K_t phi)° radially.
LevelSetReport verify_polar_levelsets(const GeomCvxFn& phi, double s, double t,
                                      const std::vector<Vec>& directions, double tol = 1e-6);

/// Checks s (K_s phi)° ⊆ K_s(L phi) ⊆ (s + t)(K_t phi)° radially.
LevelSetReport verify_legendre_levelsets(const GeomCvxFn& phi, double s, double t,
                                         const std::vector<Vec>& directions, double tol = 1e-6);

/// max over directions of |r(K_c(L phi)) - c r(K_{1/c}(phi°))|.
double legendre_polar_identity(const GeomCvxFn& phi, double c, const std::vector<Vec>& directions);

struct VolumeSandwichReport {
  double t = 0.0;
  IntegralEstimate level;        // |K_{1/t}(phi)|
  IntegralEstimate level_polar;  // |K_{1/t}(phi)°|
  IntegralEstimate polar_level;  // |K_t(phi°)|, or a bracket end on the sandwich route
  IntegralEstimate polar_level_upper;
  // Asserted reading: |K_{1/t}(phi)°| <= |K_t(phi°)| <= 2^n |K_{1/t}(phi)°|.
  bool lower_ok = false;
  bool upper_ok = false;
  // As-printed reading without the polar: informational only.
  bool printed_lower_ok = false;
  bool printed_upper_ok = false;
  std::string route;

  bool verdict() const { return lower_ok && upper_ok; }
};

VolumeSandwichReport volume_sandwich_check(const GeomCvxFn& phi, double t,
                                           const VolumeConfig& cfg = {});

}  // namespace polarcvx

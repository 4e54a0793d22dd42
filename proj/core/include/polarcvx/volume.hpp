#pragma once

#include "polarcvx/convex_body.hpp"
#include "polarcvx/types.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace polarcvx {

struct IntegralEstimate {
  double value = 0.0;
  double abs_error = 0.0;
  std::string method;
  double s_truncation = 0.0;  // layer-cake upper limit; 0 for plain volumes
  bool lower_bound_only = false;

  double lo() const { return value - abs_error; }
  double hi() const { return value + abs_error; }
};

enum class VolumeMethod { automatic, radial_quadrature, monte_carlo };

struct VolumeConfig {
  VolumeMethod method = VolumeMethod::automatic;  // radial for n <= 4
  std::size_t directions = 0;                     // 0: default_volume_direction_count
  std::size_t samples = 400'000;                  // monte carlo
  std::uint64_t seed = 0;
};

/// Equal-weight direction rule for |K| = |B_n| * mean(r(theta)^n).
///
/// Holds the full rule and an independent rule of half the size; the
/// difference of the two estimates drives the error bar.
struct RadialRule {
  int dim = 0;
  std::vector<Vec> full;
  std::vector<Vec> half;
};

RadialRule make_radial_rule(int n, std::size_t directions = 0);

// Volume from radii sampled on rule.full / rule.half (same order). Infinite
// radii give an infinite value.
IntegralEstimate radial_volume(const RadialRule& rule, std::span<const double> full_radii,
                               std::span<const double> half_radii);

IntegralEstimate body_volume(const ConvexBody& body, const VolumeConfig& cfg = {});

// Hit-or-miss estimate inside the support-function bounding box with a 3-sigma
// error bar. Deterministic for a fixed (seed, samples) regardless of threads.
IntegralEstimate monte_carlo_volume(const ConvexBody& body, std::size_t samples,
                                    std::uint64_t seed);

}  // namespace polarcvx

#pragma once

#include "polarcvx/function.hpp"
#include "polarcvx/volume.hpp"

#include <vector>

namespace polarcvx {

struct IntegrationConfig {
  double rel_tol = 0.0;  // 0: 1e-3 with radial volumes, 1e-2 with monte carlo
  VolumeConfig volume;
  int max_depth = 40;
};

/// Layer-cake integral of e^{-phi}: int_0^inf e^{-s} |{phi <= s}| ds.
///
/// Dilation shapes integrate in closed form against the base volume;
/// Minkowski-sum shapes (polynomial volume) use an (n+1)-point Gauss-Laguerre
/// rule, which is exact; everything else uses adaptive Simpson on [0, T] with
/// the tail bounded by |K_T| T^{-n} Gamma(n+1, T). Volume error bars are
/// integrated alongside and added linearly.
IntegralEstimate logconcave_integral(const GeomCvxFn& phi, const IntegrationConfig& cfg = {});

struct ProfilePoint {
  double s = 0.0;
  IntegralEstimate volume;
};

std::vector<ProfilePoint> layer_cake_profile(const GeomCvxFn& phi, const std::vector<double>& s_grid,
                                             const VolumeConfig& cfg = {});

// Gamma(n + 1, T) = n! e^{-T} sum_{k <= n} T^k / k!.
double upper_incomplete_gamma(int n, double T);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// m-point Gauss-Laguerre rule for int_0^inf e^{-s} f(s) ds (Golub-Welsch).
QuadratureRule gauss_laguerre(int m);

}  // namespace polarcvx

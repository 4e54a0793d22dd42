#pragma once

#include "polarcvx/types.hpp"

#include <functional>

namespace polarcvx {

// Convex oracle: returns f(x) and, when `subgradient` is non-null, writes an
// element of the subdifferential at x.
using ConvexOracle = std::function<double(const Vec& x, Vec* subgradient)>;

struct EllipsoidOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  int max_iterations = 0;  // 0 selects 120 n (n + 1)
};

struct EllipsoidResult {
  Vec argmin;
  double upper = 0.0;  // objective at argmin (feasible)
  double lower = 0.0;  // certified lower bound on the optimum
  int iterations = 0;
  bool converged = false;
};

/// Minimises a convex `objective` over {x : constraint(x) <= 1} with the
/// deep-cut ellipsoid method.
///
/// The constraint is gauge-like: constraint(0) = 0, so the origin is a
/// feasible start, and the feasible set lies in the ball of `radius`.
/// Every feasible centre yields a linear lower model whose minimum over the
/// current ellipsoid bounds the optimum from below, so [lower, upper] is a
/// certified bracket up to rounding.
EllipsoidResult ellipsoid_minimize(int n, const ConvexOracle& objective,
                                   const ConvexOracle& constraint, double radius,
                                   const EllipsoidOptions& options = {});

}  // namespace polarcvx

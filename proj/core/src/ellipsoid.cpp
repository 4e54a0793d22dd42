#include "polarcvx/ellipsoid.hpp"

#include "polarcvx/errors.hpp"

#include <algorithm>
#include <cmath>

namespace polarcvx {

namespace {

bool gap_closed(double upper, double lower, const EllipsoidOptions& o) {
  return upper - lower <= o.abs_tol + o.rel_tol * std::max(1.0, std::abs(upper));
}

// One-dimensional case: the ellipsoid is an interval and deep cuts are
// interval updates.
EllipsoidResult interval_minimize(const ConvexOracle& objective, const ConvexOracle& constraint,
                                  double radius, const EllipsoidOptions& o, int max_iter) {
  double lo = -radius;
  double hi = radius;
  Vec x = Vec::Zero(1);
  Vec g(1);
  EllipsoidResult res;
  res.argmin = x;
  res.upper = objective(x, nullptr);
  res.lower = -kInf;
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    const double c = 0.5 * (lo + hi);
    x[0] = c;
    const double cv = constraint(x, &g);
    if (cv > 1.0) {
      if (g[0] > 0) {
        hi = c - (cv - 1.0) / g[0];
      } else if (g[0] < 0) {
        lo = c - (cv - 1.0) / g[0];
      } else {
        break;
      }
    } else {
      const double fv = objective(x, &g);
      if (fv < res.upper) {
        res.upper = fv;
        res.argmin = x;
      }
      if (g[0] == 0.0) {
        res.lower = fv;
        res.converged = true;
        break;
      }
      res.lower = std::max(res.lower, fv - std::abs(g[0]) * 0.5 * (hi - lo));
      const double shift = (res.upper - fv) / g[0];
      if (g[0] > 0) {
        hi = std::min(hi, c + shift);
      } else {
        lo = std::max(lo, c + shift);
      }
    }
    if (gap_closed(res.upper, res.lower, o) || hi - lo <= 1e-15 * std::max(1.0, radius)) {
      res.converged = gap_closed(res.upper, res.lower, o) || hi - lo <= 1e-15 * std::max(1.0, radius);
      break;
    }
    if (lo > hi) break;
  }
  if (!std::isfinite(res.lower)) res.lower = res.upper;
  return res;
}

// out = E^T g; the problems here are tiny, plain loops beat the gemv kernels.
void transpose_times(const Mat& E, const Vec& g, Vec& out) {
  const Eigen::Index n = E.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) acc += E(i, k) * g[i];
    out[k] = acc;
  }
}

}  // namespace

EllipsoidResult ellipsoid_minimize(int n, const ConvexOracle& objective,
                                   const ConvexOracle& constraint, double radius,
                                   const EllipsoidOptions& options) {
  if (n < 1) throw InvalidArgument("ellipsoid_minimize: dimension must be positive");
  if (!(radius > 0) || !std::isfinite(radius)) {
    throw InvalidArgument("ellipsoid_minimize: radius must be positive and finite");
  }
  const int max_iter =
      options.max_iterations > 0 ? options.max_iterations : 120 * n * (n + 1);
  const double r0 = radius * (1.0 + 1e-9);
  if (n == 1) return interval_minimize(objective, constraint, r0, options, max_iter);

  const double dn = static_cast<double>(n);
  // The ellipsoid is {c + E w : |w| <= 1}; updating the factor E keeps
  // E E^T positive definite through long runs of near-parallel cuts.
  Vec c = Vec::Zero(n);
  Mat E = Mat::Identity(n, n) * r0;
  Vec g(n);
  Vec a(n);
  Vec Ea(n);

  EllipsoidResult res;
  res.argmin = c;
  res.upper = objective(c, nullptr);
  res.lower = -kInf;

  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    double alpha = 0.0;
    const double cv = constraint(c, &g);
    transpose_times(E, g, a);
    double width = a.norm();
    if (cv > 1.0) {
      if (!(width > 0)) break;
      alpha = (cv - 1.0) / width;
    } else {
      const double fv = objective(c, &g);
      if (fv < res.upper) {
        res.upper = fv;
        res.argmin = c;
      }
      transpose_times(E, g, a);
      width = a.norm();
      if (!(width > 0)) {
        // Zero subgradient at a feasible point: optimal.
        res.lower = fv;
        res.converged = true;
        break;
      }
      res.lower = std::max(res.lower, fv - width);
      alpha = (fv - res.upper) / width;
    }
    if (gap_closed(res.upper, res.lower, options)) {
      res.converged = true;
      break;
    }
    if (alpha >= 1.0) break;  // cut removes the whole ellipsoid: rounding
    alpha = std::max(alpha, 0.0);
    a /= width;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += E(i, k) * a[k];
      Ea[i] = acc;
    }
    c -= ((1.0 + dn * alpha) / (dn + 1.0)) * Ea;
    const double shrink = dn * dn * (1.0 - alpha * alpha) / (dn * dn - 1.0);
    const double rank1 = 2.0 * (1.0 + dn * alpha) / ((dn + 1.0) * (1.0 + alpha));
    const double gamma = 1.0 - std::sqrt(std::max(0.0, 1.0 - rank1));
    const double root = std::sqrt(shrink);
    for (int k = 0; k < n; ++k) {
      const double ak = gamma * a[k];
      for (int i = 0; i < n; ++i) E(i, k) = root * (E(i, k) - Ea[i] * ak);
    }
  }
  res.lower = std::min(res.lower, res.upper);
  if (!std::isfinite(res.lower)) res.lower = res.upper;
  return res;
}

}  // namespace polarcvx

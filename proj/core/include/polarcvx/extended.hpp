#pragma once

#include "polarcvx/types.hpp"

#include <cmath>

namespace polarcvx {

// Extended-real helpers on [-inf, +inf]. NaN never enters: callers only pass
// finite numerators and values in [0, +inf] as denominators.

inline bool is_pos_inf(double v) noexcept { return std::isinf(v) && v > 0; }

// Quotient with the polar-transform conventions:
//   p / 0 = +inf for p > 0, 0 / 0 = 0, p / 0 = 0 for p < 0,
//   p / +inf = 0 for finite p.
inline double ext_div(double numerator, double denominator) noexcept {
  if (denominator == 0.0) return numerator > 0.0 ? kInf : 0.0;
  if (is_pos_inf(denominator)) return 0.0;
  return numerator / denominator;
}

// x + inf = inf; both operands are >= 0 here so inf - inf never occurs.
inline double ext_add(double a, double b) noexcept {
  if (is_pos_inf(a) || is_pos_inf(b)) return kInf;
  return a + b;
}

// lambda * v with 0 * inf = 0 (the value at the origin of a scaled function).
inline double ext_scale(double lambda, double v) noexcept {
  if (lambda == 0.0) return 0.0;
  return lambda * v;
}

inline double positive_part(double v) noexcept { return v > 0.0 ? v : 0.0; }

}  // namespace polarcvx

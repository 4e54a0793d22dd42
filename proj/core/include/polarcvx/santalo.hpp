#pragma once

#include "polarcvx/function.hpp"
#include "polarcvx/integration.hpp"

#include <string>
#include <vector>

namespace polarcvx {

struct SantaloConfig {
  double c_test = 0.5;
  IntegrationConfig integration;
  // Levels t for the sandwich bracket when phi° has no closed form; empty
  // selects 9 log-spaced values in [0.05, 20].
  std::vector<double> sandwich_t;
};

struct UpperBoundFactor {
  double t_star = 0.0;  // grid minimiser of e^{1/t} (t^n / n! + 1)
  double factor = 0.0;
  double reference_t = 0.0;  // ((n-1)!)^{1/(n+1)}
  double reference_factor = 0.0;
};

UpperBoundFactor upper_bound_factor(int n);

// (int_0^inf e^{-s/2 - 1/(2s)} / s ds)^2, via s = e^u.
double constant_a();

// (n |B_n| int_0^inf r^{n-1} e^{-sqrt((r^2 - 1)_+)} dr)^2.
double ball_argument_bound(int n);

struct SantaloReport {
  int n = 0;
  std::string family;
  IntegralEstimate integral_phi;
  IntegralEstimate integral_polar;  // lower_bound_only on the sandwich route
  std::string polar_route;          // "closed_form" or "sandwich"
  double integral_polar_lo = 0.0;
  double integral_polar_hi = 0.0;
  double product = 0.0;
  double product_error = 0.0;
  double product_lo = 0.0;
  double product_hi = 0.0;
  double normalized_product = 0.0;  // product / (n! |B_n|)^2
  double upper_bound_factor = 0.0;
  double upper_bound_value = 0.0;  // (n! |B_n|)^2 * factor
  double c_test = 0.0;
  double lower_bound_value = 0.0;  // 0.7 c^n |B_n|^2
  double implied_c = 0.0;          // (product / (0.7 |B_n|^2))^{1/n}
  bool even = false;
};

SantaloReport santalo_product(const GeomCvxFn& phi, const SantaloConfig& cfg = {});

struct TheoremVerdict {
  bool lower_ok = false;
  bool upper_checked = false;
  bool upper_ok = true;
  SantaloReport report;

  bool passed() const { return lower_ok && (!upper_checked || upper_ok); }
};

/// Lower bound for every integrable phi; upper bound only for even phi. Uses
/// the conservative end of any bracket: product_lo for the lower check,
/// product_hi for the upper check.
TheoremVerdict verify_theorem(const GeomCvxFn& phi, const SantaloConfig& cfg = {});
TheoremVerdict verify_theorem(const SantaloReport& report);

}  // namespace polarcvx

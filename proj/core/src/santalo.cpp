#include "polarcvx/santalo.hpp"

#include "polarcvx/convex_body.hpp"
#include "polarcvx/errors.hpp"
#include "polarcvx/transforms.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace polarcvx {

namespace {

double bound_factor(int n, double t) {
  return std::exp(1.0 / t) * (std::pow(t, n) / std::tgamma(n + 1.0) + 1.0);
}

std::vector<double> default_sandwich_levels() {
  std::vector<double> out;
  for (int k = 0; k < 9; ++k) out.push_back(0.05 * std::pow(400.0, k / 8.0));
  return out;
}

}  // namespace

UpperBoundFactor upper_bound_factor(int n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  UpperBoundFactor out;
  out.reference_t = std::pow(std::tgamma(static_cast<double>(n)), 1.0 / (n + 1.0));
  out.reference_factor = bound_factor(n, out.reference_t);
  out.t_star = out.reference_t;
  out.factor = out.reference_factor;
  auto consider = [&](double t) {
    const double f = bound_factor(n, t);
    if (f < out.factor) {
      out.factor = f;
      out.t_star = t;
    }
  };
  for (int k = 0; k < 200; ++k) consider(1e-2 * std::pow(1e4, k / 199.0));
  for (int k = 0; k <= 100; ++k) consider(out.reference_t * std::pow(4.0, k / 100.0 - 0.5));
  return out;
}

double constant_a() {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double half = gauss_kronrod<double, 61>::integrate(
      [](double u) { return std::exp(-std::cosh(u)); }, 0.0, 8.0, 15, 1e-15, &err);
  const double integral = 2.0 * half;
  return integral * integral;
}

double ball_argument_bound(int n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  using boost::math::quadrature::gauss_kronrod;
  // Inner part r <= 1 gives 1/n; outside use w = sqrt(r^2 - 1), r dr = w dw.
  double err = 0.0;
  const double outer = gauss_kronrod<double, 61>::integrate(
      [n](double w) { return std::pow(1.0 + w * w, 0.5 * (n - 2)) * w * std::exp(-w); }, 0.0,
      std::numeric_limits<double>::infinity(), 15, 1e-14, &err);
  const double v = n * ball_volume(n) * (1.0 / n + outer);
  return v * v;
}

SantaloReport santalo_product(const GeomCvxFn& phi, const SantaloConfig& cfg) {
  const int n = phi.dim();
  SantaloReport rep;
  rep.n = n;
  rep.family = std::string(phi.family_name());
  rep.c_test = cfg.c_test;
  rep.even = is_even(phi);
  rep.integral_phi = logconcave_integral(phi, cfg.integration);

  if (has_closed_polar(phi)) {
    rep.polar_route = "closed_form";
    rep.integral_polar = logconcave_integral(polar_transform(phi), cfg.integration);
    rep.integral_polar_lo = rep.integral_polar.lo();
    rep.integral_polar_hi = rep.integral_polar.hi();
  } else {
    // psi_upper <= ... reverses under e^{-.}: int e^{-psi_upper} <= int e^{-phi°} <= int e^{-psi_lower}.
    rep.polar_route = "sandwich";
    const auto levels = cfg.sandwich_t.empty() ? default_sandwich_levels() : cfg.sandwich_t;
    double lo = 0.0;
    double hi = kInf;
    IntegralEstimate best_lo;
    for (double t : levels) {
      const SandwichPair sw = sandwich(phi, t);
      const IntegralEstimate a = logconcave_integral(sw.upper, cfg.integration);
      const IntegralEstimate b = logconcave_integral(sw.lower, cfg.integration);
      if (a.lo() > lo) {
        lo = a.lo();
        best_lo = a;
      }
      hi = std::min(hi, b.hi());
    }
    rep.integral_polar_lo = lo;
    rep.integral_polar_hi = hi;
    rep.integral_polar.value = 0.5 * (lo + hi);
    rep.integral_polar.abs_error = 0.5 * (hi - lo);
    rep.integral_polar.method = "sandwich_bracket";
    rep.integral_polar.s_truncation = best_lo.s_truncation;
    rep.integral_polar.lower_bound_only = true;
  }

  const auto& a = rep.integral_phi;
  const auto& b = rep.integral_polar;
  rep.product = a.value * b.value;
  rep.product_error = a.value * b.abs_error + b.value * a.abs_error + a.abs_error * b.abs_error;
  rep.product_lo = std::max(0.0, a.lo()) * std::max(0.0, rep.integral_polar_lo);
  rep.product_hi = a.hi() * rep.integral_polar_hi;

  const double bn = ball_volume(n);
  const double exp_ref = std::pow(std::tgamma(n + 1.0) * bn, 2);
  rep.normalized_product = rep.product / exp_ref;
  rep.upper_bound_factor = upper_bound_factor(n).factor;
  rep.upper_bound_value = exp_ref * rep.upper_bound_factor;
  rep.lower_bound_value = 0.7 * std::pow(cfg.c_test, n) * bn * bn;
  rep.implied_c = std::pow(rep.product / (0.7 * bn * bn), 1.0 / n);
  return rep;
}

TheoremVerdict verify_theorem(const SantaloReport& report) {
  TheoremVerdict v;
  v.report = report;
  v.lower_ok = report.product_lo >= report.lower_bound_value;
  v.upper_checked = report.even;
  if (v.upper_checked) v.upper_ok = report.product_hi <= report.upper_bound_value;
  return v;
}

TheoremVerdict verify_theorem(const GeomCvxFn& phi, const SantaloConfig& cfg) {
  return verify_theorem(santalo_product(phi, cfg));
}

}  // namespace polarcvx

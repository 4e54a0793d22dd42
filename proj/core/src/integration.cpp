#include "polarcvx/integration.hpp"

#include "polarcvx/errors.hpp"
#include "polarcvx/level_shape.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

namespace polarcvx {

namespace {

double default_rel_tol(const IntegrationConfig& cfg, int n) {
  if (cfg.rel_tol > 0.0) return cfg.rel_tol;
  const bool mc = cfg.volume.method == VolumeMethod::monte_carlo ||
                  (cfg.volume.method == VolumeMethod::automatic && n > 4);
  return mc ? 1e-2 : 1e-3;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// int_0^inf e^{-s} law(s)^n ds for a single dilation leaf, when closed form.
std::optional<double> dilation_moment(const ScaleLaw& law, int n) {
  if (law.constant()) return std::pow(law.a0, n * law.gamma);
  if (law.affine() && law.a0 >= 0.0 && law.a1 > 0.0) {
    double acc = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) fact *= k;
      acc += binom(n, k) * std::pow(law.a0, n - k) * std::pow(law.a1, k) * fact;
    }
    return acc;
  }
  if (law.a0 == 0.0 && law.a1 > 0.0) {
    const double e = n * law.gamma;
    return std::pow(law.a1, e) * std::tgamma(e + 1.0);
  }
  return std::nullopt;
}

struct Sample {
  double v = 0.0;    // e^{-s} V(s)
  double err = 0.0;  // e^{-s} err(s)
};

class LayerCake {
 public:
  LayerCake(std::function<IntegralEstimate(double)> volume, int max_depth)
      : volume_(std::move(volume)), max_depth_(max_depth) {}

  Sample at(double s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    const IntegralEstimate v = volume_(s);
    if (!std::isfinite(v.value)) throw NotIntegrable("level set has infinite volume");
    const double w = std::exp(-s);
    Sample smp{w * v.value, w * v.abs_error};
    cache_.emplace(s, smp);
    return smp;
  }

  IntegralEstimate raw_volume(double s) { return volume_(s); }

  // Adaptive Simpson on [a, b]; returns integral, accumulates error terms.
  double integrate(double a, double b, double tol) {
    const Sample fa = at(a), fb = at(b), fm = at(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa.v + 4.0 * fm.v + fb.v);
    return recurse(a, b, fa, fm, fb, whole, tol, 0);
  }

  double quadrature_error = 0.0;
  double volume_error = 0.0;

 private:
  double recurse(double a, double b, Sample fa, Sample fm, Sample fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const Sample fl = at(0.5 * (a + m)), fr = at(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa.v + 4.0 * fl.v + fm.v);
    const double right = (b - m) / 6.0 * (fm.v + 4.0 * fr.v + fb.v);
    const double delta = left + right - whole;
    if (depth >= max_depth_ || std::abs(delta) <= 15.0 * tol) {
      quadrature_error += std::abs(delta) / 15.0;
      volume_error += (m - a) / 6.0 * (fa.err + 4.0 * fl.err + fm.err) +
                      (b - m) / 6.0 * (fm.err + 4.0 * fr.err + fb.err);
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, fl, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, fr, fb, right, 0.5 * tol, depth + 1);
  }

  std::function<IntegralEstimate(double)> volume_;
  int max_depth_;
  std::map<double, Sample> cache_;
};

std::function<IntegralEstimate(double)> volume_function(const LevelShape& shape,
                                                        const VolumeConfig& cfg) {
  const int n = shape.dim();
  const bool radial_ok = n <= 4 && cfg.method != VolumeMethod::monte_carlo;
  if (radial_ok && shape.radially_separable()) {
    auto profile = std::make_shared<RadialProfile>(shape, make_radial_rule(n, cfg.directions));
    return [profile](double s) { return profile->volume(s); };
  }
  return [shape, cfg](double s) { return shape.volume(s, cfg); };
}

}  // namespace

double upper_incomplete_gamma(int n, double T) {
  double term = 1.0;
  double acc = 1.0;
  for (int k = 1; k <= n; ++k) {
    term *= T / k;
    acc += term;
  }
  return std::tgamma(n + 1.0) * std::exp(-T) * acc;
}

QuadratureRule gauss_laguerre(int m) {
  if (m < 1) throw InvalidArgument("Gauss-Laguerre needs m >= 1");
  Mat J = Mat::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    J(k, k) = 2.0 * k + 1.0;
    if (k + 1 < m) J(k, k + 1) = J(k + 1, k) = k + 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  QuadratureRule rule;
  for (int k = 0; k < m; ++k) {
    rule.nodes.push_back(es.eigenvalues()[k]);
    const double v0 = es.eigenvectors()(0, k);
    rule.weights.push_back(v0 * v0);
  }
  return rule;
}

IntegralEstimate logconcave_integral(const GeomCvxFn& phi, const IntegrationConfig& cfg) {
  const int n = phi.dim();
  const auto shape = level_shape(phi);
  if (!shape) throw Unsupported("layer-cake integral needs a closed-form function");
  integrability_certificate(phi);
  const double rel_tol = default_rel_tol(cfg, n);

  if (shape->kind() == LevelShape::Kind::scaled) {
    if (auto moment = dilation_moment(shape->law(), n)) {
      IntegralEstimate base = body_volume(shape->base(), cfg.volume);
      base.value *= *moment;
      base.abs_error *= *moment;
      base.method = "layer_cake_dilation/" + base.method;
      base.s_truncation = kInf;
      return base;
    }
  }

  if (shape->polynomial_volume() && shape->kind() == LevelShape::Kind::sum) {
    const QuadratureRule rule = gauss_laguerre(n + 1);
    IntegralEstimate out;
    out.method = "layer_cake_gauss_laguerre";
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const IntegralEstimate v = shape->volume(rule.nodes[j], cfg.volume);
      if (!std::isfinite(v.value)) throw NotIntegrable("level set has infinite volume");
      out.value += rule.weights[j] * v.value;
      out.abs_error += rule.weights[j] * v.abs_error;
    }
    out.s_truncation = kInf;
    return out;
  }

  LayerCake cake(volume_function(*shape, cfg.volume), cfg.max_depth);
  double T = std::max(8.0, 4.0 * n);
  // Coarse pass fixes the absolute Simpson tolerance.
  double coarse = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double a = T * k / 8.0, b = T * (k + 1) / 8.0;
    coarse += (b - a) / 6.0 * (cake.at(a).v + 4.0 * cake.at(0.5 * (a + b)).v + cake.at(b).v);
  }
  const double tol = std::max(1e-300, 0.05 * rel_tol * coarse);
  double value = cake.integrate(0.0, T, tol);
  double tail = 0.0;
  for (int iter = 0; iter < 12; ++iter) {
    const IntegralEstimate vt = cake.raw_volume(T);
    tail = vt.hi() * std::pow(T, -n) * upper_incomplete_gamma(n, T);
    if (tail <= 0.1 * rel_tol * value) break;
    value += cake.integrate(T, 2.0 * T, tol);
    T *= 2.0;
  }
  IntegralEstimate out;
  out.method = "layer_cake_simpson";
  out.value = value;
  out.abs_error = cake.quadrature_error + cake.volume_error + tail;
  out.s_truncation = T;
  return out;
}

std::vector<ProfilePoint> layer_cake_profile(const GeomCvxFn& phi, const std::vector<double>& s_grid,
                                             const VolumeConfig& cfg) {
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0.0) || !std::isfinite(s_grid[i])) {
      throw InvalidArgument("layer-cake grid levels must be positive");
    }
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) {
      throw InvalidArgument("layer-cake grid must be strictly increasing");
    }
  }
  const auto shape = level_shape(phi);
  if (!shape) throw Unsupported("layer-cake profile needs a closed-form function");
  auto vol = volume_function(*shape, cfg);
  std::vector<ProfilePoint> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) out.push_back({s, vol(s)});
  return out;
}

}  // namespace polarcvx

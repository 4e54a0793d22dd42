#include "polarcvx/volume.hpp"

#include "polarcvx/directions.hpp"
#include "polarcvx/errors.hpp"
#include "polarcvx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace polarcvx {

namespace {

constexpr std::size_t kChunk = 8192;

double mean_power(std::span<const double> radii, int n) {
  double acc = 0.0;
  for (double r : radii) {
    if (std::isinf(r)) return kInf;
    acc += std::pow(r, n);
  }
  return acc / static_cast<double>(radii.size());
}

// Relative error floor covering the irregular convergence of quasi-uniform
// sphere rules in n >= 3.
double relative_floor(int n) { return n <= 2 ? 1e-9 : 1e-4; }

}  // namespace

RadialRule make_radial_rule(int n, std::size_t directions) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (directions == 0) directions = default_volume_direction_count(n);
  RadialRule rule;
  rule.dim = n;
  rule.full = sphere_directions(n, directions);
  rule.half = sphere_directions(n, std::max<std::size_t>(1, directions / 2));
  return rule;
}

IntegralEstimate radial_volume(const RadialRule& rule, std::span<const double> full_radii,
                               std::span<const double> half_radii) {
  const int n = rule.dim;
  IntegralEstimate est;
  est.method = "radial_quadrature";
  if (n == 1) {
    // Exact: the "sphere" is {+1, -1}.
    est.value = full_radii[0] + full_radii[1];
    return est;
  }
  if (full_radii.size() != rule.full.size() || half_radii.size() != rule.half.size()) {
    throw InvalidArgument("radial_volume: radii do not match the rule");
  }
  const double bn = ball_volume(n);
  const double vf = bn * mean_power(full_radii, n);
  if (std::isinf(vf)) {
    est.value = kInf;
    est.abs_error = 0.0;
    return est;
  }
  const double vh = bn * mean_power(half_radii, n);
  est.value = vf;
  est.abs_error = std::max(2.0 * std::abs(vf - vh), relative_floor(n) * vf);
  return est;
}

IntegralEstimate body_volume(const ConvexBody& body, const VolumeConfig& cfg) {
  const int n = body.dim();
  if (!body.bounded()) throw InvalidBody("volume of an unbounded body");
  VolumeMethod method = cfg.method;
  if (method == VolumeMethod::automatic) {
    method = n <= 4 ? VolumeMethod::radial_quadrature : VolumeMethod::monte_carlo;
  }
  if (method == VolumeMethod::monte_carlo) return monte_carlo_volume(body, cfg.samples, cfg.seed);
  if (n > 4) throw InvalidArgument("radial_quadrature volume supports n <= 4");

  const RadialRule rule = make_radial_rule(n, cfg.directions);
  std::vector<double> rf(rule.full.size()), rh(rule.half.size());
  parallel_for(rf.size() + rh.size(), [&](std::size_t i) {
    if (i < rf.size()) {
      rf[i] = body.radial(rule.full[i]);
    } else {
      rh[i - rf.size()] = body.radial(rule.half[i - rf.size()]);
    }
  });
  return radial_volume(rule, rf, rh);
}

IntegralEstimate monte_carlo_volume(const ConvexBody& body, std::size_t samples,
                                    std::uint64_t seed) {
  const int n = body.dim();
  if (samples == 0) throw InvalidArgument("monte carlo volume needs samples > 0");
  if (!body.bounded()) throw InvalidBody("volume of an unbounded body");
  Vec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    hi[i] = body.support(Vec::Unit(n, i));
    lo[i] = -body.support(-Vec::Unit(n, i));
  }
  const double box = (hi - lo).prod();
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::size_t> hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t m = std::min(kChunk, samples - c * kChunk);
    Vec x(n);
    std::size_t h = 0;
    for (std::size_t k = 0; k < m; ++k) {
      for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unif(rng);
      if (body.gauge(x) <= 1.0) ++h;
    }
    hits[c] = h;
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  const double N = static_cast<double>(samples);
  const double p = static_cast<double>(total) / N;
  IntegralEstimate est;
  est.method = "monte_carlo";
  est.value = box * p;
  est.abs_error = std::max(3.0 * box * std::sqrt(p * (1.0 - p) / N), box / N);
  return est;
}

}  // namespace polarcvx

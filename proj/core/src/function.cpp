#include "polarcvx/function.hpp"

#include "polarcvx/directions.hpp"
#include "polarcvx/ellipsoid.hpp"
#include "polarcvx/errors.hpp"
#include "polarcvx/extended.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace polarcvx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMemberTol = 1e-12;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

void require_same_dim(const ConvexBody& a, const ConvexBody& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

bool inside(const ConvexBody& K, const Vec& x) { return K.gauge(x) <= 1.0 + kMemberTol; }

double distance_value(const GaugeDistanceFn& f, const Vec& x) {
  if (inside(f.center, x)) return 0.0;
  const int n = static_cast<int>(x.size());
  auto objective = [&](const Vec& z, Vec* g) {
    const Vec d = x - z;
    if (g) *g = -f.gauge_body.gauge_subgradient(d);
    return f.gauge_body.gauge(d);
  };
  auto constraint = [&](const Vec& z, Vec* g) {
    if (g) *g = f.center.gauge_subgradient(z);
    return f.center.gauge(z);
  };
  const auto res = ellipsoid_minimize(n, objective, constraint, f.center.outer_radius());
  return std::max(0.0, res.upper);
}

double sampled_lookup(const SampledFn& s, const Vec& x) {
  const double tol = 1e-12 * (1.0 + x.cwiseAbs().maxCoeff());
  auto it = std::lower_bound(s.order.begin(), s.order.end(), x[0] - tol,
                             [&](std::size_t i, double v) { return s.points[i][0] < v; });
  for (; it != s.order.end() && s.points[*it][0] <= x[0] + tol; ++it) {
    if ((s.points[*it] - x).cwiseAbs().maxCoeff() <= tol) return s.values[*it];
  }
  throw OffGridQuery("sampled function queried off its grid");
}

bool same_value(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

}  // namespace

GeomCvxFn GeomCvxFn::indicator(ConvexBody K) {
  const int n = K.dim();
  return GeomCvxFn(n, 1, std::make_shared<const FnFamily>(IndicatorFn{std::move(K)}));
}

GeomCvxFn GeomCvxFn::gauge(ConvexBody K, double t) {
  require_positive(t, "gauge factor t");
  const int n = K.dim();
  return GeomCvxFn(n, 1, std::make_shared<const FnFamily>(GaugeFn{std::move(K), t}));
}

GeomCvxFn GeomCvxFn::restricted_gauge(ConvexBody K, ConvexBody L) {
  require_same_dim(K, L);
  const int n = K.dim();
  return GeomCvxFn(n, 1,
                   std::make_shared<const FnFamily>(RestrictedGaugeFn{std::move(K), std::move(L)}));
}

GeomCvxFn GeomCvxFn::zero_set_gauge(ConvexBody K, ConvexBody L) {
  require_same_dim(K, L);
  const int n = K.dim();
  return GeomCvxFn(n, 1,
                   std::make_shared<const FnFamily>(ZeroSetGaugeFn{std::move(K), std::move(L)}));
}

GeomCvxFn GeomCvxFn::hinged_gauge(ConvexBody K, double a) {
  require_positive(a, "hinge slope a");
  const int n = K.dim();
  return GeomCvxFn(n, 1, std::make_shared<const FnFamily>(HingedGaugeFn{std::move(K), a}));
}

GeomCvxFn GeomCvxFn::power_gauge(ConvexBody K, double p, double scale) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("power p must be >= 1");
  require_positive(scale, "power scale");
  const int n = K.dim();
  return GeomCvxFn(n, 1, std::make_shared<const FnFamily>(PowerGaugeFn{std::move(K), p, scale}));
}

GeomCvxFn GeomCvxFn::max_of(std::vector<GeomCvxFn> parts) {
  if (parts.size() < 2) throw InvalidArgument("MaxOf needs at least two functions");
  const int n = parts.front().dim();
  int depth = 0;
  MaxOfFn m;
  for (auto& p : parts) {
    if (p.dim() != n) throw DimensionMismatch(n, p.dim());
    depth = std::max(depth, p.depth());
    m.parts.push_back(std::make_shared<const GeomCvxFn>(std::move(p)));
  }
  return GeomCvxFn(n, depth + 1, std::make_shared<const FnFamily>(std::move(m)));
}

GeomCvxFn GeomCvxFn::sampled(std::vector<Vec> points, std::vector<double> values,
                             bool lower_bound_only) {
  if (points.empty()) throw InvalidArgument("sampled function needs at least one point");
  if (points.size() != values.size()) throw InvalidArgument("sampled points/values mismatch");
  const int n = static_cast<int>(points.front().size());
  if (n < 1) throw InvalidArgument("sampled points must have positive dimension");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw DimensionMismatch(n, static_cast<int>(points[i].size()));
    if (!points[i].allFinite()) throw InvalidArgument("sampled point is not finite");
    if (std::isnan(values[i]) || values[i] < 0.0) {
      throw InvalidArgument("sampled values must lie in [0, +inf]");
    }
  }
  SampledFn s{std::move(points), std::move(values), lower_bound_only, {}};
  s.order.resize(s.points.size());
  for (std::size_t i = 0; i < s.order.size(); ++i) s.order[i] = i;
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t a, std::size_t b) { return s.points[a][0] < s.points[b][0]; });
  return GeomCvxFn(n, 1, std::make_shared<const FnFamily>(std::move(s)));
}

GeomCvxFn GeomCvxFn::gauge_distance(ConvexBody M, ConvexBody S) {
  require_same_dim(M, S);
  if (!S.bounded()) throw InvalidBody("gauge distance: the center set must be bounded");
  const int n = M.dim();
  return GeomCvxFn(n, 1,
                   std::make_shared<const FnFamily>(GaugeDistanceFn{std::move(M), std::move(S)}));
}

std::string_view GeomCvxFn::family_name() const {
  return std::visit(overloaded{
                        [](const IndicatorFn&) { return std::string_view("indicator"); },
                        [](const GaugeFn&) { return std::string_view("gauge"); },
                        [](const RestrictedGaugeFn&) { return std::string_view("restricted_gauge"); },
                        [](const ZeroSetGaugeFn&) { return std::string_view("zero_set_gauge"); },
                        [](const HingedGaugeFn&) { return std::string_view("hinged_gauge"); },
                        [](const PowerGaugeFn&) { return std::string_view("power_gauge"); },
                        [](const MaxOfFn&) { return std::string_view("max_of"); },
                        [](const SampledFn&) { return std::string_view("sampled"); },
                        [](const GaugeDistanceFn&) { return std::string_view("gauge_distance"); },
                    },
                    *family_);
}

double GeomCvxFn::operator()(const Vec& x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, static_cast<int>(x.size()));
  return std::visit(
      overloaded{
          [&](const IndicatorFn& f) { return inside(f.body, x) ? 0.0 : kInf; },
          [&](const GaugeFn& f) { return f.t * f.body.gauge(x); },
          [&](const RestrictedGaugeFn& f) {
            return inside(f.domain, x) ? f.gauge_body.gauge(x) : kInf;
          },
          [&](const ZeroSetGaugeFn& f) {
            return inside(f.zero_set, x) ? 0.0 : f.gauge_body.gauge(x);
          },
          [&](const HingedGaugeFn& f) { return f.a * positive_part(f.body.gauge(x) - 1.0); },
          [&](const PowerGaugeFn& f) { return f.scale * std::pow(f.body.gauge(x), f.p); },
          [&](const MaxOfFn& f) {
            double v = 0.0;
            for (const auto& p : f.parts) {
              v = std::max(v, (*p)(x));
              if (std::isinf(v)) break;
            }
            return v;
          },
          [&](const SampledFn& f) { return sampled_lookup(f, x); },
          [&](const GaugeDistanceFn& f) { return distance_value(f, x); },
      },
      *family_);
}

double evaluate(const GeomCvxFn& phi, const Vec& x) { return phi(x); }

void check_depth(const GeomCvxFn& phi) {
  if (phi.depth() > kMaxFunctionDepth) throw DepthExceeded(phi.depth());
}

bool is_closed_form(const GeomCvxFn& phi) {
  const auto& f = phi.family();
  if (std::holds_alternative<SampledFn>(f) || std::holds_alternative<ZeroSetGaugeFn>(f)) {
    return false;
  }
  if (const auto* m = std::get_if<MaxOfFn>(&f)) {
    for (const auto& p : m->parts) {
      if (!is_closed_form(*p)) return false;
    }
  }
  return true;
}

namespace {

std::optional<bool> structural_even(const GeomCvxFn& phi) {
  auto both = [](const ConvexBody& a, const ConvexBody& b) -> std::optional<bool> {
    const auto sa = a.structurally_symmetric();
    const auto sb = b.structurally_symmetric();
    if (sa == true && sb == true) return true;
    return std::nullopt;
  };
  return std::visit(
      overloaded{
          [](const IndicatorFn& f) { return f.body.structurally_symmetric(); },
          [](const GaugeFn& f) { return f.body.structurally_symmetric(); },
          [&](const RestrictedGaugeFn& f) { return both(f.gauge_body, f.domain); },
          [&](const ZeroSetGaugeFn& f) { return both(f.gauge_body, f.zero_set); },
          [](const HingedGaugeFn& f) { return f.body.structurally_symmetric(); },
          [](const PowerGaugeFn& f) { return f.body.structurally_symmetric(); },
          [](const MaxOfFn& f) -> std::optional<bool> {
            for (const auto& p : f.parts) {
              if (structural_even(*p) != true) return std::nullopt;
            }
            return true;
          },
          [](const SampledFn&) -> std::optional<bool> { return std::nullopt; },
          [&](const GaugeDistanceFn& f) { return both(f.gauge_body, f.center); },
      },
      phi.family());
}

bool sampled_even(const GeomCvxFn& phi, const SampledFn& s) {
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    try {
      if (!same_value(s.values[i], phi(-s.points[i]), 1e-9)) return false;
    } catch (const OffGridQuery&) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_even(const GeomCvxFn& phi) {
  if (const auto* s = std::get_if<SampledFn>(&phi.family())) return sampled_even(phi, *s);
  if (structural_even(phi) == false) return false;
  const int n = phi.dim();
  double scale = ray_sublevel_radius(phi, Vec::Unit(n, 0), 1.0);
  if (!std::isfinite(scale) || scale <= 0.0) scale = 1.0;
  const auto dirs = sphere_directions(n, 100);
  for (std::size_t k = 0; k < 100; ++k) {
    const double r = scale * (0.05 + 3.0 * (static_cast<double>(k) + 0.5) / 100.0);
    const Vec x = r * dirs[k % dirs.size()];
    if (!same_value(phi(x), phi(-x), 1e-9)) return false;
  }
  return true;
}

std::string_view to_string(RayLabel label) {
  switch (label) {
    case RayLabel::linear:
      return "linear";
    case RayLabel::indicator:
      return "indicator";
    case RayLabel::other:
      return "other";
  }
  return "other";
}

RayClassification classify_rays(const GeomCvxFn& phi, const std::vector<Vec>& directions) {
  constexpr std::array<double, 5> radii{0.25, 0.5, 1.0, 2.0, 4.0};
  RayClassification out;
  out.labels.reserve(directions.size());
  for (const Vec& theta : directions) {
    const double v1 = phi(theta);
    bool linear = std::isfinite(v1);
    for (double r : radii) {
      if (!linear) break;
      const double v = phi(r * theta);
      linear = std::isfinite(v) && std::abs(v - r * v1) <= 1e-9 * std::max(1.0, r * v1);
    }
    RayLabel label = RayLabel::other;
    if (linear) {
      label = RayLabel::linear;
    } else {
      double ext = ray_sublevel_radius(phi, theta, 1.0);
      if (!std::isfinite(ext) || ext <= 0.0) ext = 1.0;
      bool zero_inf = true;
      bool jumped = false;
      for (int k = 0; k < 100 && zero_inf; ++k) {
        const double v = phi((10.0 * ext * (k + 1) / 100.0) * theta);
        if (std::isinf(v)) {
          jumped = true;
        } else if (v != 0.0 || jumped) {
          zero_inf = false;
        }
      }
      if (zero_inf && jumped) label = RayLabel::indicator;
    }
    out.labels.push_back(label);
    if (label == RayLabel::other) out.all_equality_form = false;
  }
  return out;
}

double ray_sublevel_radius(const GeomCvxFn& phi, const Vec& theta, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("level must be >= 0");
  constexpr double kCap = 1099511627776.0;  // 2^40
  double lo = 0.0;
  double hi = 1.0;
  if (phi(theta) <= t) {
    lo = 1.0;
    hi = 2.0;
    while (phi(hi * theta) <= t) {
      lo = hi;
      hi *= 2.0;
      if (hi > kCap) return kInf;
    }
  } else {
    double r = 0.5;
    while (phi(r * theta) > t) {
      hi = r;
      r *= 0.5;
      if (r < 1.0 / kCap) return 0.0;
    }
    lo = r;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid * theta) <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

IntegrabilityCertificate integrability_certificate(const GeomCvxFn& phi) {
  if (std::holds_alternative<SampledFn>(phi.family())) {
    throw Unsupported("integrability certificate needs a closed-form function");
  }
  check_depth(phi);
  const int n = phi.dim();
  auto dirs = coordinate_directions(n);
  if (n >= 2) {
    auto more = sphere_directions(n, default_levelset_direction_count(n));
    dirs.insert(dirs.end(), more.begin(), more.end());
  }
  double rmin = kInf;
  double rmax = 0.0;
  for (const Vec& d : dirs) {
    if (std::isinf(ray_sublevel_radius(phi, d, 0.0))) {
      throw NotIntegrable("phi vanishes on a whole ray; e^{-phi} has infinite integral");
    }
    const double r1 = ray_sublevel_radius(phi, d, 1.0);
    if (std::isinf(r1)) throw NotIntegrable("level-1 set is unbounded");
    rmin = std::min(rmin, r1);
    rmax = std::max(rmax, r1);
  }
  if (!(rmin > 0.0)) throw NotIntegrable("support of e^{-phi} is not full-dimensional");

  IntegrabilityCertificate cert;
  cert.ball_center = Vec::Zero(n);
  cert.ball_radius = 0.9 * rmin;
  cert.decay_r = 1.01 * rmax;
  cert.decay_c = 1.0 / cert.decay_r;

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto random_direction = [&] {
    Vec v(n);
    do {
      for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    } while (v.norm() < 1e-12);
    return Vec(v / v.norm());
  };
  double max_inner = 0.0;
  for (int k = 0; k < 500; ++k) {
    const Vec x =
        cert.ball_radius * std::pow(unif(rng), 1.0 / n) * random_direction();
    max_inner = std::max(max_inner, phi(x));
  }
  if (max_inner > 1.0 + 1e-9) throw NotIntegrable("certificate ball validation failed");
  cert.epsilon = std::min(0.5, std::exp(-max_inner));
  for (int refine = 0;; ++refine) {
    bool ok = true;
    for (int k = 0; k < 500 && ok; ++k) {
      const double r = cert.decay_r * (1.0 + 9.0 * unif(rng));
      const Vec theta = random_direction();
      if (phi(r * theta) >= cert.decay_c * r * (1.0 - 1e-9)) continue;
      const double r1 = ray_sublevel_radius(phi, theta, 1.0);
      if (std::isinf(r1) || refine == 20) throw NotIntegrable("certificate decay validation failed");
      cert.decay_r = 1.01 * std::max(r1, cert.decay_r);
      cert.decay_c = 1.0 / cert.decay_r;
      ok = false;
    }
    if (ok) break;
  }
  return cert;
}

}  // namespace polarcvx

namespace polarcvx {

GeomCvxFn precompose_linear(const GeomCvxFn& phi, const Mat& A) {
  const int n = phi.dim();
  if (A.rows() != n || A.cols() != n) throw DimensionMismatch(n, static_cast<int>(A.rows()));
  const Mat Ainv = A.inverse();
  auto map = [&](const ConvexBody& K) { return ConvexBody::linear_image(Ainv, K); };
  return std::visit(
      overloaded{
          [&](const IndicatorFn& f) { return GeomCvxFn::indicator(map(f.body)); },
          [&](const GaugeFn& f) { return GeomCvxFn::gauge(map(f.body), f.t); },
          [&](const RestrictedGaugeFn& f) {
            return GeomCvxFn::restricted_gauge(map(f.gauge_body), map(f.domain));
          },
          [&](const ZeroSetGaugeFn& f) {
            return GeomCvxFn::zero_set_gauge(map(f.gauge_body), map(f.zero_set));
          },
          [&](const HingedGaugeFn& f) { return GeomCvxFn::hinged_gauge(map(f.body), f.a); },
          [&](const PowerGaugeFn& f) { return GeomCvxFn::power_gauge(map(f.body), f.p, f.scale); },
          [&](const MaxOfFn& f) {
            std::vector<GeomCvxFn> parts;
            for (const auto& p : f.parts) parts.push_back(precompose_linear(*p, A));
            return GeomCvxFn::max_of(std::move(parts));
          },
          [&](const SampledFn& f) {
            std::vector<Vec> pts;
            pts.reserve(f.points.size());
            for (const auto& p : f.points) pts.push_back(Ainv * p);
            return GeomCvxFn::sampled(std::move(pts), f.values, f.lower_bound_only);
          },
          [&](const GaugeDistanceFn& f) {
            return GeomCvxFn::gauge_distance(map(f.gauge_body), map(f.center));
          },
      },
      phi.family());
}

}  // namespace polarcvx

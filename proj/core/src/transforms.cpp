#include "polarcvx/transforms.hpp"

#include "polarcvx/directions.hpp"
#include "polarcvx/errors.hpp"
#include "polarcvx/extended.hpp"
#include "polarcvx/level_shape.hpp"
#include "polarcvx/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace polarcvx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double polar_ratio(const GeomCvxFn& phi, const Vec& x, const Vec& y) {
  return ext_div(x.dot(y) - 1.0, phi(y));
}

double legendre_gap(const GeomCvxFn& phi, const Vec& x, const Vec& y) {
  const double v = phi(y);
  return std::isinf(v) ? -kInf : x.dot(y) - v;
}

template <class Score>
double sample_sup(const std::vector<Vec>& sample, Score&& score, std::size_t* arg) {
  if (sample.empty()) throw InvalidArgument("empty sample");
  double best = -kInf;
  *arg = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double v = score(sample[i]);
    if (v > best) {
      best = v;
      *arg = i;
    }
  }
  return best;
}

// Best value of score(r * theta) over r in [rmin, rmax]: log grid, then golden
// section inside the best bracket.
template <class Score>
double ray_best(const Vec& theta, double rmin, double rmax, Score& score, double* r_out) {
  constexpr int kGrid = 48;
  const double step = std::log(rmax / rmin) / (kGrid - 1);
  double best = -kInf;
  int arg = 0;
  for (int k = 0; k < kGrid; ++k) {
    const double v = score(Vec(rmin * std::exp(step * k) * theta));
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  double a = rmin * std::exp(step * std::max(0, arg - 1));
  double b = rmin * std::exp(step * std::min(kGrid - 1, arg + 1));
  double r_best = rmin * std::exp(step * arg);
  if (std::isfinite(best)) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = score(Vec(c * theta)), fd = score(Vec(d * theta));
    for (int it = 0; it < 60 && b - a > 1e-13 * b; ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = score(Vec(c * theta));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = score(Vec(d * theta));
      }
      if (fc > best) { best = fc; r_best = c; }
      if (fd > best) { best = fd; r_best = d; }
    }
  }
  *r_out = r_best;
  return best;
}

// Compass search over directions, each scored by its best ray value.
template <class Score>
double refine(const Vec& y0, double best, int rounds, Score&& score, double rmin, double rmax) {
  const int n = static_cast<int>(y0.size());
  const double len = y0.norm();
  if (!(len > 0.0) || std::isinf(best)) return best;
  Vec theta = y0 / len;
  double r = 0.0;
  best = std::max(best, ray_best(theta, rmin, rmax, score, &r));
  if (n == 1) return best;
  double h = 0.25;
  for (int round = 0; round < rounds && std::isfinite(best); ++round, h *= 0.5) {
    for (int moves = 0; moves < 32; ++moves) {
      // Tangent basis at theta, plus pairwise diagonals.
      Mat Q = Eigen::HouseholderQR<Mat>(theta).householderQ();
      std::vector<Vec> dirs;
      for (int i = 1; i < n; ++i) {
        dirs.push_back(Q.col(i));
        for (int j = i + 1; j < n; ++j) {
          dirs.push_back((Q.col(i) + Q.col(j)) / std::sqrt(2.0));
          dirs.push_back((Q.col(i) - Q.col(j)) / std::sqrt(2.0));
        }
      }
      Vec step_best = theta;
      double improved = best;
      for (const Vec& d : dirs) {
        for (double sgn : {1.0, -1.0}) {
          const Vec cand = (theta + sgn * h * d).normalized();
          double rc = 0.0;
          const double v = ray_best(cand, rmin, rmax, score, &rc);
          if (v > improved) {
            improved = v;
            step_best = cand;
          }
        }
      }
      if (!(improved > best)) break;
      best = improved;
      theta = step_best;
    }
  }
  return best;
}

double level_one_extent(const GeomCvxFn& phi) {
  if (const auto* s = std::get_if<SampledFn>(&phi.family())) {
    double m = 0.0;
    for (const auto& p : s->points) m = std::max(m, p.norm());
    return m > 0.0 ? m : 1.0;
  }
  const int n = phi.dim();
  double acc = 0.0;
  int cnt = 0;
  for (const Vec& d : coordinate_directions(n)) {
    const double r = ray_sublevel_radius(phi, d, 1.0);
    if (std::isfinite(r) && r > 0.0) {
      acc += r;
      ++cnt;
    }
  }
  return cnt ? acc / cnt : 1.0;
}

bool sampled_input(const GeomCvxFn& phi) {
  return std::holds_alternative<SampledFn>(phi.family());
}

}  // namespace

double polar_pointwise(const GeomCvxFn& phi, const Vec& x, const std::vector<Vec>& sample) {
  std::size_t arg = 0;
  return sample_sup(sample, [&](const Vec& y) { return polar_ratio(phi, x, y); }, &arg);
}

double legendre_pointwise(const GeomCvxFn& phi, const Vec& x, const std::vector<Vec>& sample) {
  std::size_t arg = 0;
  return sample_sup(sample, [&](const Vec& y) { return legendre_gap(phi, x, y); }, &arg);
}

namespace {

std::pair<double, double> sample_radii(const GeomCvxFn& phi, const SupOptions& opts, bool for_polar) {
  const double ext = level_one_extent(phi);
  return {opts.min_radius * ext, (for_polar ? opts.max_radius : std::min(opts.max_radius, 1e3)) * ext};
}

}  // namespace

std::vector<Vec> sup_sample(const GeomCvxFn& phi, const SupOptions& opts, bool for_polar) {
  if (const auto* s = std::get_if<SampledFn>(&phi.family())) return s->points;
  const int n = phi.dim();
  std::size_t nd = opts.directions;
  if (nd == 0) nd = n == 1 ? 2 : n == 2 ? 128 : n == 3 ? 512 : 1024;
  const auto dirs = sphere_directions(n, nd);
  std::size_t nr = opts.radii;
  if (nr == 0) nr = std::max<std::size_t>(16, 4096 * static_cast<std::size_t>(n) / dirs.size());
  const auto [rmin, rmax] = sample_radii(phi, opts, for_polar);
  std::vector<Vec> out;
  out.reserve(dirs.size() * nr + 1);
  out.push_back(Vec::Zero(n));
  for (std::size_t j = 0; j < nr; ++j) {
    const double f = nr == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(nr - 1);
    const double r = rmin * std::pow(rmax / rmin, f);
    for (const Vec& d : dirs) out.push_back(r * d);
  }
  return out;
}

double polar_sup(const GeomCvxFn& phi, const Vec& x, const SupOptions& opts) {
  const auto sample = sup_sample(phi, opts, true);
  auto score = [&](const Vec& y) { return polar_ratio(phi, x, y); };
  std::size_t arg = 0;
  const double best = sample_sup(sample, score, &arg);
  if (sampled_input(phi)) return best;
  const auto [rmin, rmax] = sample_radii(phi, opts, true);
  return refine(sample[arg], best, opts.refine_rounds, score, rmin, rmax);
}

double legendre_sup(const GeomCvxFn& phi, const Vec& x, const SupOptions& opts) {
  const auto sample = sup_sample(phi, opts, false);
  auto score = [&](const Vec& y) { return legendre_gap(phi, x, y); };
  std::size_t arg = 0;
  const double best = sample_sup(sample, score, &arg);
  if (sampled_input(phi)) return best;
  const auto [rmin, rmax] = sample_radii(phi, opts, false);
  return refine(sample[arg], best, opts.refine_rounds, score, rmin, rmax);
}

std::vector<Vec> default_query_points(int n, double scale) {
  auto dirs = coordinate_directions(n);
  if (n >= 2) {
    auto more = sphere_directions(n, n == 2 ? 32 : 64);
    dirs.insert(dirs.end(), more.begin(), more.end());
  }
  std::vector<Vec> out{Vec::Zero(n)};
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (const Vec& d : dirs) out.push_back(scale * r * d);
  }
  return out;
}

bool has_closed_polar(const GeomCvxFn& phi) {
  const auto& f = phi.family();
  return !(std::holds_alternative<MaxOfFn>(f) || std::holds_alternative<ZeroSetGaugeFn>(f) ||
           std::holds_alternative<SampledFn>(f));
}

bool has_closed_legendre(const GeomCvxFn& phi) { return has_closed_polar(phi); }

namespace {

GeomCvxFn tabulate(const GeomCvxFn& phi, const TransformOptions& opts, bool polar) {
  check_depth(phi);
  std::vector<Vec> query = opts.query;
  if (query.empty()) {
    query = sampled_input(phi) ? std::get<SampledFn>(phi.family()).points
                               : default_query_points(phi.dim());
  }
  const auto sample = sup_sample(phi, opts.sup, polar);
  const std::pair<double, double> radii =
      sampled_input(phi) ? std::pair{0.0, 0.0} : sample_radii(phi, opts.sup, polar);
  std::vector<double> values(query.size());
  parallel_for(query.size(), [&](std::size_t i) {
    const Vec& x = query[i];
    auto score = [&](const Vec& y) {
      return polar ? polar_ratio(phi, x, y) : legendre_gap(phi, x, y);
    };
    std::size_t arg = 0;
    double best = sample_sup(sample, score, &arg);
    if (!sampled_input(phi)) best = refine(sample[arg], best, opts.sup.refine_rounds, score, radii.first, radii.second);
    values[i] = std::max(0.0, best);
  });
  return GeomCvxFn::sampled(std::move(query), std::move(values), true);
}

}  // namespace

GeomCvxFn polar_transform_sampled(const GeomCvxFn& phi, const TransformOptions& opts) {
  return tabulate(phi, opts, true);
}

GeomCvxFn legendre_transform_sampled(const GeomCvxFn& phi, const TransformOptions& opts) {
  return tabulate(phi, opts, false);
}

GeomCvxFn polar_transform(const GeomCvxFn& phi, const TransformOptions& opts) {
  check_depth(phi);
  using F = GeomCvxFn;
  return std::visit(
      overloaded{
          [](const IndicatorFn& f) { return F::indicator(f.body.polar()); },
          [](const GaugeFn& f) { return F::gauge(f.body.polar(), 1.0 / f.t); },
          [](const RestrictedGaugeFn& f) {
            return F::gauge_distance(f.gauge_body.polar(), f.domain.polar());
          },
          [](const GaugeDistanceFn& f) {
            return F::restricted_gauge(f.gauge_body.polar(), f.center.polar());
          },
          [](const HingedGaugeFn& f) {
            const ConvexBody Kp = f.body.polar();
            return F::restricted_gauge(Kp.scaled(f.a), Kp);
          },
          [](const PowerGaugeFn& f) {
            if (f.p == 1.0) return F::gauge(f.body.polar(), 1.0 / f.scale);
            const double p = f.p;
            const double c = std::pow(p - 1.0, p - 1.0) / (f.scale * std::pow(p, p));
            return F::power_gauge(f.body.polar(), p, c);
          },
          [&](const MaxOfFn&) { return polar_transform_sampled(phi, opts); },
          [&](const ZeroSetGaugeFn&) { return polar_transform_sampled(phi, opts); },
          [&](const SampledFn&) { return polar_transform_sampled(phi, opts); },
      },
      phi.family());
}

GeomCvxFn legendre_transform(const GeomCvxFn& phi, const TransformOptions& opts) {
  check_depth(phi);
  using F = GeomCvxFn;
  return std::visit(
      overloaded{
          [](const IndicatorFn& f) { return F::gauge(f.body.polar(), 1.0); },
          [](const GaugeFn& f) { return F::indicator(f.body.polar().scaled(f.t)); },
          [](const RestrictedGaugeFn& f) {
            return F::gauge_distance(f.domain.polar(), f.gauge_body.polar());
          },
          [](const GaugeDistanceFn& f) {
            return F::restricted_gauge(f.center.polar(), f.gauge_body.polar());
          },
          [](const HingedGaugeFn& f) {
            const ConvexBody Kp = f.body.polar();
            return F::restricted_gauge(Kp, Kp.scaled(f.a));
          },
          [](const PowerGaugeFn& f) {
            const ConvexBody Kp = f.body.polar();
            if (f.p == 1.0) return F::indicator(Kp.scaled(f.scale));
            const double p = f.p;
            const double q = p / (p - 1.0);
            const double c = (p - 1.0) / p * std::pow(f.scale * p, -1.0 / (p - 1.0));
            return F::power_gauge(Kp, q, c);
          },
          [&](const MaxOfFn&) { return legendre_transform_sampled(phi, opts); },
          [&](const ZeroSetGaugeFn&) { return legendre_transform_sampled(phi, opts); },
          [&](const SampledFn&) { return legendre_transform_sampled(phi, opts); },
      },
      phi.family());
}

SandwichPair sandwich(const GeomCvxFn& phi, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("sandwich level t must be positive");
  const auto shape = level_shape(phi);
  if (!shape || !shape->convex()) {
    throw Unsupported("sandwich needs a convex closed-form level set");
  }
  const ConvexBody Kp = shape->body(t).polar();
  return SandwichPair{GeomCvxFn::hinged_gauge(Kp, 1.0 / t),
                      GeomCvxFn::restricted_gauge(Kp.scaled(t), Kp), t};
}

bool ball_pointwise_inequality(const GeomCvxFn& phi, const GeomCvxFn& polar, const Vec& x,
                               const Vec& y) {
  const double rhs = std::sqrt(positive_part(x.dot(y) - 1.0));
  const double lhs = ext_add(phi(x), polar(y)) / 2.0;
  return lhs >= rhs * (1.0 - 1e-12);
}

bool ball_pointwise_inequality(const GeomCvxFn& phi, const Vec& x, const Vec& y) {
  if (!has_closed_polar(phi)) throw Unsupported("Ball inequality needs a closed-form polar");
  return ball_pointwise_inequality(phi, polar_transform(phi), x, y);
}

double equality_form_polar(const ConvexBody& K, const ConvexBody& L, const Vec& x) {
  const ConvexBody Lp = L.polar();
  const double gl = Lp.gauge(x);
  if (gl <= 1.0) return 0.0;
  return K.polar().gauge(x) * (1.0 - 1.0 / gl);
}

}  // namespace polarcvx

#include "polarcvx/level_shape.hpp"

#include "polarcvx/errors.hpp"
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

int common_dim(const std::vector<LevelShape>& parts) {
  if (parts.empty()) throw InvalidArgument("level shape: no parts");
  const int n = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != n) throw DimensionMismatch(n, p.dim());
  }
  return n;
}

double scaled_radius(double f, double base_radius) {
  if (f <= 0.0) return 0.0;
  return f * base_radius;
}

}  // namespace

double ScaleLaw::operator()(double s) const {
  const double v = a0 + a1 * s;
  if (v <= 0.0) return 0.0;
  return gamma == 1.0 ? v : std::pow(v, gamma);
}

LevelShape LevelShape::scaled(ConvexBody body, ScaleLaw law) {
  LevelShape out;
  out.kind_ = Kind::scaled;
  out.dim_ = body.dim();
  out.base_ = std::make_shared<const ConvexBody>(std::move(body));
  out.law_ = law;
  return out;
}

LevelShape LevelShape::intersection(std::vector<LevelShape> parts) {
  LevelShape out;
  out.kind_ = Kind::intersection;
  out.dim_ = common_dim(parts);
  out.children_ = std::move(parts);
  return out;
}

LevelShape LevelShape::sum(std::vector<LevelShape> parts) {
  LevelShape out;
  out.kind_ = Kind::sum;
  out.dim_ = common_dim(parts);
  out.children_ = std::move(parts);
  return out;
}

LevelShape LevelShape::union_of(std::vector<LevelShape> parts) {
  LevelShape out;
  out.kind_ = Kind::union_of;
  out.dim_ = common_dim(parts);
  out.children_ = std::move(parts);
  return out;
}

bool LevelShape::convex() const {
  if (kind_ == Kind::union_of) return false;
  return std::all_of(children_.begin(), children_.end(), [](const auto& c) { return c.convex(); });
}

bool LevelShape::radially_separable() const {
  if (kind_ == Kind::sum) return false;
  return std::all_of(children_.begin(), children_.end(),
                     [](const auto& c) { return c.radially_separable(); });
}

bool LevelShape::polynomial_volume() const {
  switch (kind_) {
    case Kind::scaled:
      return law_.affine() || law_.constant();
    case Kind::sum:
      return std::all_of(children_.begin(), children_.end(),
                         [](const auto& c) { return c.kind() == Kind::scaled && c.polynomial_volume(); });
    default:
      return false;
  }
}

bool LevelShape::constant() const {
  if (kind_ == Kind::scaled) return law_.constant();
  return std::all_of(children_.begin(), children_.end(), [](const auto& c) { return c.constant(); });
}

double LevelShape::radius(const Vec& theta, double s) const {
  switch (kind_) {
    case Kind::scaled: {
      const double f = law_(s);
      return f <= 0.0 ? 0.0 : f * base_->radial(theta);
    }
    case Kind::intersection: {
      double r = kInf;
      for (const auto& c : children_) r = std::min(r, c.radius(theta, s));
      return r;
    }
    case Kind::union_of: {
      double r = 0.0;
      for (const auto& c : children_) r = std::max(r, c.radius(theta, s));
      return r;
    }
    case Kind::sum: {
      try {
        return body(s).radial(theta);
      } catch (const InvalidArgument&) {
        return 0.0;
      }
    }
  }
  return 0.0;
}

double LevelShape::support(const Vec& u, double s) const {
  switch (kind_) {
    case Kind::scaled: {
      const double f = law_(s);
      return f <= 0.0 ? 0.0 : f * base_->support(u);
    }
    case Kind::sum: {
      double h = 0.0;
      for (const auto& c : children_) h += c.support(u, s);
      return h;
    }
    case Kind::union_of: {
      double h = 0.0;
      for (const auto& c : children_) h = std::max(h, c.support(u, s));
      return h;
    }
    case Kind::intersection:
      return body(s).support(u);
  }
  return 0.0;
}

ConvexBody LevelShape::body(double s) const {
  switch (kind_) {
    case Kind::scaled: {
      const double f = law_(s);
      if (!(f > 0.0)) throw InvalidArgument("level set is lower-dimensional at this level");
      return f == 1.0 ? *base_ : base_->scaled(f);
    }
    case Kind::intersection: {
      std::vector<ConvexBody> parts;
      for (const auto& c : children_) parts.push_back(c.body(s));
      return ConvexBody::intersection(std::move(parts));
    }
    case Kind::sum: {
      std::vector<ConvexBody> parts;
      std::vector<double> weights;
      for (const auto& c : children_) {
        if (c.kind_ == Kind::scaled) {
          const double f = c.law_(s);
          if (f > 0.0) {
            parts.push_back(*c.base_);
            weights.push_back(f);
          }
          continue;
        }
        try {
          parts.push_back(c.body(s));
          weights.push_back(1.0);
        } catch (const InvalidArgument&) {
        }
      }
      if (parts.empty()) throw InvalidArgument("level set is lower-dimensional at this level");
      return ConvexBody::minkowski_sum(std::move(parts), std::move(weights));
    }
    case Kind::union_of:
      throw Unsupported("level set is a non-convex union");
  }
  throw Unsupported("unknown level shape");
}

IntegralEstimate LevelShape::volume(double s, const VolumeConfig& cfg) const {
  if (convex() && kind_ != Kind::scaled && !radially_separable()) {
    try {
      return body_volume(body(s), cfg);
    } catch (const InvalidArgument&) {
      return IntegralEstimate{0.0, 0.0, "degenerate", 0.0, false};
    }
  }
  if (kind_ == Kind::scaled) {
    const double f = law_(s);
    if (!(f > 0.0)) return IntegralEstimate{0.0, 0.0, "degenerate", 0.0, false};
    if (!base_->bounded()) return IntegralEstimate{kInf, 0.0, "unbounded", 0.0, false};
    IntegralEstimate v = body_volume(*base_, cfg);
    const double scale = std::pow(f, dim_);
    v.value *= scale;
    v.abs_error *= scale;
    return v;
  }
  const int n = dim_;
  if (n > 4 || cfg.method == VolumeMethod::monte_carlo) {
    if (!convex()) throw Unsupported("monte carlo volume of a non-convex level set");
    return body_volume(body(s), cfg);
  }
  const RadialProfile profile(*this, make_radial_rule(n, cfg.directions));
  return profile.volume(s);
}

void LevelShape::leaves(std::vector<const LevelShape*>& out) const {
  if (kind_ == Kind::scaled) {
    out.push_back(this);
    return;
  }
  for (const auto& c : children_) c.leaves(out);
}

double LevelShape::radius_from_leaves(const double*& leaf_radii, double s) const {
  switch (kind_) {
    case Kind::scaled:
      return scaled_radius(law_(s), *leaf_radii++);
    case Kind::intersection: {
      double r = kInf;
      for (const auto& c : children_) r = std::min(r, c.radius_from_leaves(leaf_radii, s));
      return r;
    }
    case Kind::union_of: {
      double r = 0.0;
      for (const auto& c : children_) r = std::max(r, c.radius_from_leaves(leaf_radii, s));
      return r;
    }
    case Kind::sum:
      break;
  }
  throw Unsupported("radial profile of a Minkowski sum");
}

std::optional<LevelShape> level_shape(const GeomCvxFn& phi) {
  check_depth(phi);
  using S = LevelShape;
  return std::visit(
      overloaded{
          [](const IndicatorFn& f) -> std::optional<S> { return S::scaled(f.body, {1.0, 0.0, 1.0}); },
          [](const GaugeFn& f) -> std::optional<S> {
            return S::scaled(f.body, {0.0, 1.0 / f.t, 1.0});
          },
          [](const RestrictedGaugeFn& f) -> std::optional<S> {
            return S::intersection(
                {S::scaled(f.gauge_body, {0.0, 1.0, 1.0}), S::scaled(f.domain, {1.0, 0.0, 1.0})});
          },
          [](const ZeroSetGaugeFn& f) -> std::optional<S> {
            return S::union_of(
                {S::scaled(f.zero_set, {1.0, 0.0, 1.0}), S::scaled(f.gauge_body, {0.0, 1.0, 1.0})});
          },
          [](const HingedGaugeFn& f) -> std::optional<S> {
            return S::scaled(f.body, {1.0, 1.0 / f.a, 1.0});
          },
          [](const PowerGaugeFn& f) -> std::optional<S> {
            return S::scaled(f.body, {0.0, 1.0 / f.scale, 1.0 / f.p});
          },
          [](const MaxOfFn& f) -> std::optional<S> {
            std::vector<S> parts;
            for (const auto& p : f.parts) {
              auto s = level_shape(*p);
              if (!s) return std::nullopt;
              parts.push_back(std::move(*s));
            }
            return S::intersection(std::move(parts));
          },
          [](const SampledFn&) -> std::optional<S> { return std::nullopt; },
          [](const GaugeDistanceFn& f) -> std::optional<S> {
            return S::sum(
                {S::scaled(f.center, {1.0, 0.0, 1.0}), S::scaled(f.gauge_body, {0.0, 1.0, 1.0})});
          },
      },
      phi.family());
}

RadialProfile::RadialProfile(const LevelShape& shape, RadialRule rule)
    : shape_(shape), rule_(std::move(rule)) {
  if (!shape_.radially_separable()) throw Unsupported("radial profile of a Minkowski sum");
  std::vector<const LevelShape*> leaves;
  shape_.leaves(leaves);
  leaf_count_ = leaves.size();
  full_.resize(rule_.full.size() * leaf_count_);
  half_.resize(rule_.half.size() * leaf_count_);
  const std::size_t nf = rule_.full.size();
  parallel_for(nf + rule_.half.size(), [&](std::size_t i) {
    const bool in_full = i < nf;
    const Vec& theta = in_full ? rule_.full[i] : rule_.half[i - nf];
    double* dst = in_full ? &full_[i * leaf_count_] : &half_[(i - nf) * leaf_count_];
    for (std::size_t k = 0; k < leaf_count_; ++k) dst[k] = leaves[k]->base().radial(theta);
  });
}

IntegralEstimate RadialProfile::volume(double s) const {
  std::vector<double> rf(rule_.full.size()), rh(rule_.half.size());
  for (std::size_t i = 0; i < rf.size(); ++i) {
    const double* p = &full_[i * leaf_count_];
    rf[i] = shape_.radius_from_leaves(p, s);
  }
  for (std::size_t i = 0; i < rh.size(); ++i) {
    const double* p = &half_[i * leaf_count_];
    rh[i] = shape_.radius_from_leaves(p, s);
  }
  return radial_volume(rule_, rf, rh);
}

}  // namespace polarcvx

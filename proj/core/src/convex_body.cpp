#include "polarcvx/convex_body.hpp"

#include "polarcvx/directions.hpp"
#include "polarcvx/ellipsoid.hpp"
#include "polarcvx/errors.hpp"
#include "polarcvx/polytope.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>

namespace polarcvx {

namespace detail {

struct BodyImpl {
  int dim = 0;
  BodyRep rep;
  bool bounded = true;
  // Halfspace: normals / offsets. Named simplex: unit-circumradius vertices.
  std::vector<Vec> normalized;

  // Lazily enumerated dual vertices: facet normals of a vertex body, vertices
  // of a halfspace body.
  mutable std::once_flag dual_once;
  mutable std::vector<Vec> dual;
  mutable std::exception_ptr dual_error;
};

}  // namespace detail

namespace {

using detail::BodyImpl;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(int expected, const Vec& x) {
  if (x.size() != expected) throw DimensionMismatch(expected, static_cast<int>(x.size()));
}

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// Index of max <p_i, x>; m >= 1.
std::size_t argmax_dot(const std::vector<Vec>& pts, const Vec& x, double* best) {
  std::size_t arg = 0;
  double b = -kInf;
  const Eigen::Index n = x.size();
  const double* xd = x.data();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double* p = pts[i].data();
    double v = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) v += p[k] * xd[k];
    if (v > b) {
      b = v;
      arg = i;
    }
  }
  *best = b;
  return arg;
}

std::vector<Vec> probe_directions(int n) {
  std::vector<Vec> dirs = coordinate_directions(n);
  if (n >= 2) {
    auto more = sphere_directions(n, n == 2 ? 64 : 256);
    dirs.insert(dirs.end(), more.begin(), more.end());
  }
  return dirs;
}

// max_i <p_i, theta> > tol for every probe direction.
bool positively_spanning(const std::vector<Vec>& pts, int n, double tol) {
  for (const Vec& d : probe_directions(n)) {
    double best = -kInf;
    for (const Vec& p : pts) best = std::max(best, p.dot(d));
    if (!(best > tol)) return false;
  }
  return true;
}

const std::vector<Vec>& dual_of(const BodyImpl& impl) {
  std::call_once(impl.dual_once, [&impl] {
    try {
      const auto* vr = std::get_if<VertexRep>(&impl.rep.value);
      const std::vector<Vec>& src = vr ? vr->vertices : impl.normalized;
      impl.dual = dual_vertices(src, impl.dim);
      if (impl.dual.empty() || !positively_spanning(impl.dual, impl.dim, 0.0)) {
        throw InvalidBody(vr ? "vertex body: origin is not interior (facet enumeration)"
                             : "halfspace body: unbounded or degenerate (vertex enumeration)");
      }
    } catch (...) {
      impl.dual_error = std::current_exception();
    }
  });
  if (impl.dual_error) std::rethrow_exception(impl.dual_error);
  return impl.dual;
}

// A dilate's dual is the parent's dual rescaled; reuse it instead of
// enumerating again.
void inherit_dual(const BodyImpl& parent, BodyImpl& child, double factor) {
  if (!parent.bounded) return;
  try {
    const auto& d = dual_of(parent);
    std::call_once(child.dual_once, [&] {
      child.dual = d;
      for (auto& v : child.dual) v *= factor;
    });
  } catch (const Error&) {
  }
}

double singular_ratio(const Mat& A, double* smin, double* smax) {
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& s = svd.singularValues();
  *smax = s.maxCoeff();
  *smin = s.minCoeff();
  return *smax > 0 ? *smin / *smax : 0.0;
}


EllipsoidResult free_minimize(int d, const ConvexOracle& objective, double radius) {
  auto feasible = [](const Vec&, Vec* g) {
    if (g) g->setZero();
    return 0.0;
  };
  return ellipsoid_minimize(d, objective, feasible, radius);
}

// min of f over the hyperplane <theta, y> = 1 (theta a unit vector), searched
// within distance `radius` of theta. The radial function of a body is this
// minimum for f = h_K; the reciprocal of its support is the minimum for
// f = ||.||_K.
struct HyperplaneMin {
  double value;
  Vec y;
};

HyperplaneMin hyperplane_min(const Vec& theta, const ConvexOracle& f, double radius) {
  const int n = static_cast<int>(theta.size());
  if (n == 1) return {f(theta, nullptr), theta};
  const Mat Q = Eigen::HouseholderQR<Mat>(theta).householderQ() * Mat::Identity(n, n);
  const Mat B = Q.rightCols(n - 1);
  Vec full(n), y(n);
  auto objective = [&](const Vec& v, Vec* g) {
    y.noalias() = B * v;
    y += theta;
    const double value = f(y, g ? &full : nullptr);
    if (g) *g = B.transpose() * full;
    return value;
  };
  const auto res = free_minimize(n - 1, objective, radius);
  return {res.upper, theta + B * res.argmin};
}

HyperplaneMin radial_from_support(const std::vector<ConvexBody>& parts,
                                  const std::vector<double>& weights, const Vec& theta,
                                  double inner) {
  auto h = [&](const Vec& u, Vec* g) {
    double total = 0.0;
    if (g) g->setZero(u.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      total += weights[i] * parts[i].support(u);
      if (g) *g += weights[i] * parts[i].support_point(u);
    }
    return total;
  };
  return hyperplane_min(theta, h, 1.01 * h(theta, nullptr) / inner + 1e-12);
}

// Support of an intersection through the gauge, the max of the parts' gauges.
// Returns the value and a maximizing point.
std::pair<double, Vec> intersection_support(const std::vector<ConvexBody>& parts, const Vec& u,
                                            double outer) {
  const double nu = u.norm();
  auto g = [&](const Vec& y, Vec* sub) {
    double best = -kInf;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const double v = parts[i].gauge(y);
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (sub) *sub = parts[arg].gauge_subgradient(y);
    return best;
  };
  const Vec theta = u / nu;
  const auto best = hyperplane_min(theta, g, 1.01 * outer * g(theta, nullptr) + 1e-12);
  return {nu / best.value, best.y / best.value};
}


}  // namespace

std::string_view to_string(NamedShape shape) {
  switch (shape) {
    case NamedShape::cube:
      return "cube";
    case NamedShape::euclidean_ball:
      return "euclidean_ball";
    case NamedShape::cross_polytope:
      return "cross_polytope";
    case NamedShape::simplex_centered:
      return "simplex_centered";
  }
  return "unknown";
}

std::optional<NamedShape> named_shape_from_string(std::string_view name) {
  if (name == "cube") return NamedShape::cube;
  if (name == "euclidean_ball" || name == "ball") return NamedShape::euclidean_ball;
  if (name == "cross_polytope") return NamedShape::cross_polytope;
  if (name == "simplex_centered" || name == "simplex") return NamedShape::simplex_centered;
  return std::nullopt;
}

double ball_volume(int n) {
  if (n < 1) throw InvalidArgument("ball_volume: n must be >= 1");
  const double h = 0.5 * n;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

std::vector<Vec> unit_simplex_vertices(int n) {
  if (n < 1) throw InvalidArgument("simplex dimension must be >= 1");
  const int m = n + 1;
  Mat diffs = Mat::Zero(m, n);
  for (int k = 0; k < n; ++k) {
    diffs(k, k) = 1.0;
    diffs(k + 1, k) = -1.0;
  }
  Eigen::HouseholderQR<Mat> qr(diffs);
  const Mat Q = qr.householderQ() * Mat::Identity(m, n);
  const Vec centroid = Vec::Constant(m, 1.0 / m);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Vec v = Q.transpose() * (Vec::Unit(m, i) - centroid);
    out.push_back(v / v.norm());
  }
  return out;
}

ConvexBody::ConvexBody(std::shared_ptr<const detail::BodyImpl> impl) : impl_(std::move(impl)) {}

ConvexBody ConvexBody::vertices(std::vector<Vec> verts) {
  if (verts.empty()) throw InvalidBody("vertex body: no vertices");
  const int n = static_cast<int>(verts.front().size());
  if (n < 1) throw InvalidBody("vertex body: zero-dimensional vertices");
  double scale = 0.0;
  for (const Vec& v : verts) {
    if (v.size() != n) throw InvalidBody("vertex body: vertices of mixed dimension");
    if (!v.allFinite()) throw InvalidBody("vertex body: non-finite coordinate");
    scale = std::max(scale, v.norm());
  }
  if (verts.size() < static_cast<std::size_t>(n) + 1) {
    throw InvalidBody("vertex body: needs at least n + 1 vertices");
  }
  if (!positively_spanning(verts, n, kGeomTol * scale)) {
    throw InvalidBody("vertex body: origin is not in the interior of the hull");
  }
  auto impl = std::make_shared<BodyImpl>();
  impl->dim = n;
  impl->rep.value = VertexRep{std::move(verts)};
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::halfspaces(std::vector<Vec> normals, std::vector<double> offsets,
                                  Boundedness boundedness) {
  if (normals.empty()) throw InvalidBody("halfspace body: no halfspaces");
  if (normals.size() != offsets.size()) {
    throw InvalidBody("halfspace body: normals and offsets differ in length");
  }
  const int n = static_cast<int>(normals.front().size());
  if (n < 1) throw InvalidBody("halfspace body: zero-dimensional normals");
  std::vector<Vec> normalized;
  normalized.reserve(normals.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != n) throw InvalidBody("halfspace body: normals of mixed dimension");
    if (!normals[i].allFinite() || !std::isfinite(offsets[i])) {
      throw InvalidBody("halfspace body: non-finite data");
    }
    if (!(offsets[i] > 0.0)) {
      throw InvalidBody("halfspace body: offset <= 0, origin not interior");
    }
    normalized.push_back(normals[i] / offsets[i]);
    scale = std::max(scale, normalized.back().norm());
  }
  if (!(scale > 0.0)) throw InvalidBody("halfspace body: all normals vanish");
  const bool bounded = positively_spanning(normalized, n, kGeomTol * scale);
  if (!bounded && boundedness == Boundedness::require_bounded) {
    throw InvalidBody("halfspace body: unbounded (infinite radial extent)");
  }
  auto impl = std::make_shared<BodyImpl>();
  impl->dim = n;
  impl->bounded = bounded;
  impl->normalized = std::move(normalized);
  impl->rep.value = HalfspaceRep{std::move(normals), std::move(offsets)};
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::named(NamedShape shape, int dim, double scale) {
  if (dim < 1) throw InvalidBody("named body: dimension must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidBody("named body: scale must be positive and finite");
  }
  auto impl = std::make_shared<BodyImpl>();
  impl->dim = dim;
  impl->rep.value = NamedRep{shape, scale};
  if (shape == NamedShape::simplex_centered) impl->normalized = unit_simplex_vertices(dim);
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::linear_image(const Mat& A, const ConvexBody& base) {
  const int n = base.dim();
  if (A.rows() != n || A.cols() != n) throw DimensionMismatch(n, static_cast<int>(A.rows()));
  if (!A.allFinite()) throw InvalidBody("linear image: non-finite matrix");
  double smin = 0, smax = 0;
  if (singular_ratio(A, &smin, &smax) < 1e-12) {
    throw InvalidBody("linear image: matrix is singular or ill-conditioned");
  }
  auto impl = std::make_shared<BodyImpl>();
  impl->dim = n;
  impl->bounded = base.bounded();
  impl->rep.value = LinearRep{A, A.inverse(), base};
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::intersection(std::vector<ConvexBody> parts) {
  if (parts.empty()) throw InvalidBody("intersection: no parts");
  const int n = parts.front().dim();
  bool any_bounded = false;
  for (const auto& p : parts) {
    if (p.dim() != n) throw DimensionMismatch(n, p.dim());
    any_bounded = any_bounded || p.bounded();
  }
  if (!any_bounded) throw InvalidBody("intersection: needs a bounded part");
  if (parts.size() == 1) return parts.front();
  auto impl = std::make_shared<BodyImpl>();
  impl->dim = n;
  impl->rep.value = IntersectionRep{std::move(parts)};
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::minkowski_sum(std::vector<ConvexBody> parts, std::vector<double> weights) {
  if (parts.empty()) throw InvalidBody("minkowski sum: no parts");
  if (parts.size() != weights.size()) throw InvalidBody("minkowski sum: weights/parts mismatch");
  const int n = parts.front().dim();
  std::vector<ConvexBody> kept;
  std::vector<double> kept_w;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].dim() != n) throw DimensionMismatch(n, parts[i].dim());
    if (!parts[i].bounded()) throw InvalidBody("minkowski sum: unbounded part");
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw InvalidBody("minkowski sum: weights must be finite and >= 0");
    }
    if (weights[i] > 0.0) {
      kept.push_back(parts[i]);
      kept_w.push_back(weights[i]);
    }
  }
  if (kept.empty()) throw InvalidBody("minkowski sum: all weights vanish");
  if (kept.size() == 1) return kept.front().scaled(kept_w.front());
  auto impl = std::make_shared<BodyImpl>();
  impl->dim = n;
  impl->rep.value = SumRep{std::move(kept), std::move(kept_w)};
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::polar_of(const ConvexBody& base) {
  auto impl = std::make_shared<BodyImpl>();
  impl->dim = base.dim();
  impl->rep.value = PolarRep{base};
  return ConvexBody(std::move(impl));
}

int ConvexBody::dim() const { return impl_->dim; }
bool ConvexBody::bounded() const { return impl_->bounded; }
const BodyRep& ConvexBody::representation() const { return impl_->rep; }

double ConvexBody::gauge(const Vec& x) const {
  require_dim(dim(), x);
  const BodyImpl& im = *impl_;
  return std::visit(
      overloaded{
          [&](const VertexRep&) {
            double best = 0;
            argmax_dot(dual_of(im), x, &best);
            return std::max(0.0, best);
          },
          [&](const HalfspaceRep&) {
            double best = 0;
            argmax_dot(im.normalized, x, &best);
            return std::max(0.0, best);
          },
          [&](const NamedRep& r) {
            switch (r.shape) {
              case NamedShape::cube:
                return x.cwiseAbs().maxCoeff() / r.scale;
              case NamedShape::euclidean_ball:
                return x.norm() / r.scale;
              case NamedShape::cross_polytope:
                return x.cwiseAbs().sum() / r.scale;
              case NamedShape::simplex_centered: {
                double best = 0;
                argmax_dot(im.normalized, -x, &best);
                return std::max(0.0, best * im.dim / r.scale);
              }
            }
            return 0.0;
          },
          [&](const LinearRep& r) { return r.base.gauge(r.inverse * x); },
          [&](const IntersectionRep& r) {
            double best = 0;
            for (const auto& p : r.parts) best = std::max(best, p.gauge(x));
            return best;
          },
          [&](const SumRep& r) {
            const double nx = x.norm();
            if (nx == 0.0) return 0.0;
            return nx / radial_from_support(r.parts, r.weights, x / nx, inner_radius()).value;
          },
          [&](const PolarRep& r) { return r.base.support(x); },
      },
      im.rep.value);
}

double ConvexBody::support(const Vec& u) const {
  require_dim(dim(), u);
  const BodyImpl& im = *impl_;
  if (!im.bounded) throw InvalidBody("support of an unbounded body");
  return std::visit(
      overloaded{
          [&](const VertexRep& r) {
            double best = 0;
            argmax_dot(r.vertices, u, &best);
            return best;
          },
          [&](const HalfspaceRep&) {
            double best = 0;
            argmax_dot(dual_of(im), u, &best);
            return best;
          },
          [&](const NamedRep& r) {
            switch (r.shape) {
              case NamedShape::cube:
                return r.scale * u.cwiseAbs().sum();
              case NamedShape::euclidean_ball:
                return r.scale * u.norm();
              case NamedShape::cross_polytope:
                return r.scale * u.cwiseAbs().maxCoeff();
              case NamedShape::simplex_centered: {
                double best = 0;
                argmax_dot(im.normalized, u, &best);
                return r.scale * best;
              }
            }
            return 0.0;
          },
          [&](const LinearRep& r) { return r.base.support(r.matrix.transpose() * u); },
          [&](const IntersectionRep& r) {
            if (u.isZero(0.0)) return 0.0;
            return intersection_support(r.parts, u, outer_radius()).first;
          },
          [&](const SumRep& r) {
            double total = 0;
            for (std::size_t i = 0; i < r.parts.size(); ++i) {
              total += r.weights[i] * r.parts[i].support(u);
            }
            return total;
          },
          [&](const PolarRep& r) { return r.base.gauge(u); },
      },
      im.rep.value);
}

Vec ConvexBody::gauge_subgradient(const Vec& x) const {
  require_dim(dim(), x);
  const BodyImpl& im = *impl_;
  const int n = im.dim;
  return std::visit(
      overloaded{
          [&](const VertexRep&) -> Vec {
            double best = 0;
            const auto& d = dual_of(im);
            return d[argmax_dot(d, x, &best)];
          },
          [&](const HalfspaceRep&) -> Vec {
            double best = 0;
            const auto i = argmax_dot(im.normalized, x, &best);
            return best > 0 ? im.normalized[i] : Vec(Vec::Zero(n));
          },
          [&](const NamedRep& r) -> Vec {
            Vec g = Vec::Zero(n);
            switch (r.shape) {
              case NamedShape::cube: {
                Eigen::Index i = 0;
                x.cwiseAbs().maxCoeff(&i);
                g[i] = sign(x[i]) / r.scale;
                break;
              }
              case NamedShape::euclidean_ball: {
                const double nx = x.norm();
                if (nx > 0) g = x / (nx * r.scale);
                break;
              }
              case NamedShape::cross_polytope:
                for (int i = 0; i < n; ++i) g[i] = sign(x[i]) / r.scale;
                break;
              case NamedShape::simplex_centered: {
                double best = 0;
                const auto i = argmax_dot(im.normalized, -x, &best);
                g = -im.normalized[i] * (static_cast<double>(n) / r.scale);
                break;
              }
            }
            return g;
          },
          [&](const LinearRep& r) -> Vec {
            return r.inverse.transpose() * r.base.gauge_subgradient(r.inverse * x);
          },
          [&](const IntersectionRep& r) -> Vec {
            std::size_t arg = 0;
            double best = -kInf;
            for (std::size_t i = 0; i < r.parts.size(); ++i) {
              const double v = r.parts[i].gauge(x);
              if (v > best) {
                best = v;
                arg = i;
              }
            }
            return r.parts[arg].gauge_subgradient(x);
          },
          [&](const SumRep& r) -> Vec {
            const double nx = x.norm();
            if (nx == 0.0) return Vec::Zero(n);
            const auto best = radial_from_support(r.parts, r.weights, x / nx, inner_radius());
            return best.y / best.value;
          },
          [&](const PolarRep& r) -> Vec { return r.base.support_point(x); },
      },
      im.rep.value);
}

Vec ConvexBody::support_point(const Vec& u) const {
  require_dim(dim(), u);
  const BodyImpl& im = *impl_;
  if (!im.bounded) throw InvalidBody("support point of an unbounded body");
  const int n = im.dim;
  return std::visit(
      overloaded{
          [&](const VertexRep& r) -> Vec {
            double best = 0;
            return r.vertices[argmax_dot(r.vertices, u, &best)];
          },
          [&](const HalfspaceRep&) -> Vec {
            double best = 0;
            const auto& d = dual_of(im);
            return d[argmax_dot(d, u, &best)];
          },
          [&](const NamedRep& r) -> Vec {
            Vec y = Vec::Zero(n);
            switch (r.shape) {
              case NamedShape::cube:
                for (int i = 0; i < n; ++i) y[i] = r.scale * sign(u[i]);
                break;
              case NamedShape::euclidean_ball: {
                const double nu = u.norm();
                if (nu > 0) y = u * (r.scale / nu);
                break;
              }
              case NamedShape::cross_polytope: {
                Eigen::Index i = 0;
                u.cwiseAbs().maxCoeff(&i);
                y[i] = r.scale * sign(u[i]);
                break;
              }
              case NamedShape::simplex_centered: {
                double best = 0;
                y = r.scale * im.normalized[argmax_dot(im.normalized, u, &best)];
                break;
              }
            }
            return y;
          },
          [&](const LinearRep& r) -> Vec {
            return r.matrix * r.base.support_point(r.matrix.transpose() * u);
          },
          [&](const IntersectionRep& r) -> Vec {
            if (u.isZero(0.0)) return Vec::Zero(n);
            return intersection_support(r.parts, u, outer_radius()).second;
          },
          [&](const SumRep& r) -> Vec {
            Vec y = Vec::Zero(n);
            for (std::size_t i = 0; i < r.parts.size(); ++i) {
              y += r.weights[i] * r.parts[i].support_point(u);
            }
            return y;
          },
          [&](const PolarRep& r) -> Vec { return r.base.gauge_subgradient(u); },
      },
      im.rep.value);
}

double ConvexBody::radial(const Vec& theta) const {
  const double g = gauge(theta);
  return g > 0 ? 1.0 / g : kInf;
}

bool ConvexBody::contains(const Vec& x, double tol) const { return gauge(x) <= 1.0 + tol; }

ConvexBody ConvexBody::polar() const {
  const BodyImpl& im = *impl_;
  if (!im.bounded) throw InvalidBody("polar of an unbounded body has the origin on its boundary");
  return std::visit(
      overloaded{
          [&](const VertexRep& r) {
            return halfspaces(r.vertices, std::vector<double>(r.vertices.size(), 1.0));
          },
          [&](const HalfspaceRep&) { return vertices(im.normalized); },
          [&](const NamedRep& r) {
            switch (r.shape) {
              case NamedShape::cube:
                return named(NamedShape::cross_polytope, im.dim, 1.0 / r.scale);
              case NamedShape::cross_polytope:
                return named(NamedShape::cube, im.dim, 1.0 / r.scale);
              case NamedShape::euclidean_ball:
                return named(NamedShape::euclidean_ball, im.dim, 1.0 / r.scale);
              case NamedShape::simplex_centered:
                return halfspaces(im.normalized,
                                  std::vector<double>(im.normalized.size(), 1.0 / r.scale));
            }
            return ConvexBody(impl_);
          },
          [&](const LinearRep& r) {
            return linear_image(r.inverse.transpose(), r.base.polar());
          },
          [&](const IntersectionRep&) { return polar_of(ConvexBody(impl_)); },
          [&](const SumRep&) { return polar_of(ConvexBody(impl_)); },
          [&](const PolarRep& r) { return r.base; },
      },
      im.rep.value);
}

ConvexBody ConvexBody::scaled(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("scaled: factor must be positive and finite");
  }
  const BodyImpl& im = *impl_;
  return std::visit(
      overloaded{
          [&](const VertexRep& r) {
            std::vector<Vec> v = r.vertices;
            for (auto& p : v) p *= lambda;
            auto impl = std::make_shared<BodyImpl>();
            impl->dim = im.dim;
            impl->rep.value = VertexRep{std::move(v)};
            inherit_dual(im, *impl, 1.0 / lambda);
            return ConvexBody(std::move(impl));
          },
          [&](const HalfspaceRep& r) {
            std::vector<double> b = r.offsets;
            for (auto& o : b) o *= lambda;
            auto impl = std::make_shared<BodyImpl>();
            impl->dim = im.dim;
            impl->bounded = im.bounded;
            impl->normalized = im.normalized;
            for (auto& a : impl->normalized) a /= lambda;
            impl->rep.value = HalfspaceRep{r.normals, std::move(b)};
            inherit_dual(im, *impl, lambda);
            return ConvexBody(std::move(impl));
          },
          [&](const NamedRep& r) { return named(r.shape, im.dim, r.scale * lambda); },
          [&](const LinearRep& r) { return linear_image(lambda * r.matrix, r.base); },
          [&](const IntersectionRep& r) {
            std::vector<ConvexBody> parts;
            for (const auto& p : r.parts) parts.push_back(p.scaled(lambda));
            return intersection(std::move(parts));
          },
          [&](const SumRep& r) {
            std::vector<double> w = r.weights;
            for (auto& x : w) x *= lambda;
            return minkowski_sum(r.parts, std::move(w));
          },
          [&](const PolarRep& r) { return polar_of(r.base.scaled(1.0 / lambda)); },
      },
      im.rep.value);
}

double ConvexBody::inner_radius() const {
  const BodyImpl& im = *impl_;
  return std::visit(
      overloaded{
          [&](const VertexRep&) {
            double m = 0;
            for (const Vec& y : dual_of(im)) m = std::max(m, y.norm());
            return 1.0 / m;
          },
          [&](const HalfspaceRep&) {
            double m = 0;
            for (const Vec& p : im.normalized) m = std::max(m, p.norm());
            return 1.0 / m;
          },
          [&](const NamedRep& r) {
            switch (r.shape) {
              case NamedShape::cube:
              case NamedShape::euclidean_ball:
                return r.scale;
              case NamedShape::cross_polytope:
                return r.scale / std::sqrt(static_cast<double>(im.dim));
              case NamedShape::simplex_centered:
                return r.scale / im.dim;
            }
            return r.scale;
          },
          [&](const LinearRep& r) {
            double smin = 0, smax = 0;
            singular_ratio(r.matrix, &smin, &smax);
            return smin * r.base.inner_radius();
          },
          [&](const IntersectionRep& r) {
            double m = kInf;
            for (const auto& p : r.parts) m = std::min(m, p.inner_radius());
            return m;
          },
          [&](const SumRep& r) {
            double total = 0;
            for (std::size_t i = 0; i < r.parts.size(); ++i) {
              total += r.weights[i] * r.parts[i].inner_radius();
            }
            return total;
          },
          [&](const PolarRep& r) { return 1.0 / r.base.outer_radius(); },
      },
      im.rep.value);
}

double ConvexBody::outer_radius() const {
  const BodyImpl& im = *impl_;
  if (!im.bounded) return kInf;
  return std::visit(
      overloaded{
          [&](const VertexRep& r) {
            double m = 0;
            for (const Vec& v : r.vertices) m = std::max(m, v.norm());
            return m;
          },
          [&](const HalfspaceRep&) {
            double m = 0;
            for (const Vec& v : dual_of(im)) m = std::max(m, v.norm());
            return m;
          },
          [&](const NamedRep& r) {
            switch (r.shape) {
              case NamedShape::cube:
                return r.scale * std::sqrt(static_cast<double>(im.dim));
              case NamedShape::euclidean_ball:
              case NamedShape::cross_polytope:
              case NamedShape::simplex_centered:
                return r.scale;
            }
            return r.scale;
          },
          [&](const LinearRep& r) {
            double smin = 0, smax = 0;
            singular_ratio(r.matrix, &smin, &smax);
            return smax * r.base.outer_radius();
          },
          [&](const IntersectionRep& r) {
            double m = kInf;
            for (const auto& p : r.parts) m = std::min(m, p.outer_radius());
            return m;
          },
          [&](const SumRep& r) {
            double total = 0;
            for (std::size_t i = 0; i < r.parts.size(); ++i) {
              total += r.weights[i] * r.parts[i].outer_radius();
            }
            return total;
          },
          [&](const PolarRep& r) { return 1.0 / r.base.inner_radius(); },
      },
      im.rep.value);
}

std::optional<bool> ConvexBody::structurally_symmetric() const {
  const BodyImpl& im = *impl_;
  auto closed_under_negation = [](const std::vector<Vec>& pts) {
    for (const Vec& p : pts) {
      bool found = false;
      for (const Vec& q : pts) {
        if ((p + q).norm() <= kGeomTol * (1.0 + p.norm())) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  auto all_parts = [](const std::vector<ConvexBody>& parts) -> std::optional<bool> {
    for (const auto& p : parts) {
      const auto s = p.structurally_symmetric();
      if (!s.value_or(false)) return std::nullopt;
    }
    return true;
  };
  return std::visit(
      overloaded{
          [&](const VertexRep& r) -> std::optional<bool> {
            if (closed_under_negation(r.vertices)) return true;
            return std::nullopt;
          },
          [&](const HalfspaceRep&) -> std::optional<bool> {
            if (closed_under_negation(im.normalized)) return true;
            return std::nullopt;
          },
          [&](const NamedRep& r) -> std::optional<bool> {
            return r.shape != NamedShape::simplex_centered || im.dim == 1;
          },
          [&](const LinearRep& r) { return r.base.structurally_symmetric(); },
          [&](const IntersectionRep& r) { return all_parts(r.parts); },
          [&](const SumRep& r) { return all_parts(r.parts); },
          [&](const PolarRep& r) { return r.base.structurally_symmetric(); },
      },
      im.rep.value);
}

std::string ConvexBody::describe() const {
  const BodyImpl& im = *impl_;
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const VertexRep& r) {
                   os << "vertices(n=" << im.dim << ", m=" << r.vertices.size() << ")";
                 },
                 [&](const HalfspaceRep& r) {
                   os << "halfspaces(n=" << im.dim << ", m=" << r.normals.size()
                      << (im.bounded ? "" : ", unbounded") << ")";
                 },
                 [&](const NamedRep& r) {
                   os << to_string(r.shape) << "(n=" << im.dim << ", scale=" << r.scale << ")";
                 },
                 [&](const LinearRep& r) { os << "linear(" << r.base.describe() << ")"; },
                 [&](const IntersectionRep& r) {
                   os << "intersection[";
                   for (std::size_t i = 0; i < r.parts.size(); ++i) {
                     os << (i ? ", " : "") << r.parts[i].describe();
                   }
                   os << "]";
                 },
                 [&](const SumRep& r) {
                   os << "sum[";
                   for (std::size_t i = 0; i < r.parts.size(); ++i) {
                     os << (i ? ", " : "") << r.weights[i] << "*" << r.parts[i].describe();
                   }
                   os << "]";
                 },
                 [&](const PolarRep& r) { os << "polar(" << r.base.describe() << ")"; },
             },
             im.rep.value);
  return os.str();
}

}  // namespace polarcvx

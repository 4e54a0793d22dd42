// Prints one PASS/FAIL line per acceptance criterion; exit status is the
// number of failed criteria.

#include "../oracles.hpp"

#include <polarcvx/cli.hpp>
#include <polarcvx/convex_body.hpp>
#include <polarcvx/function.hpp>
#include <polarcvx/level_sets.hpp>
#include <polarcvx/santalo.hpp>
#include <polarcvx/spec_io.hpp>
#include <polarcvx/transforms.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace polarcvx;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o, double seconds) {
  std::printf("criterion %2d %-28s %s  (%.1fs) %s\n", id, title, o.ok ? "PASS" : "FAIL", seconds,
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

template <class F>
void run(int id, const char* title, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, title, o, dt);
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<ConvexBody> random_polytopes(int count, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0.6, 1.4);
  std::vector<ConvexBody> out;
  for (int k = 0; k < count; ++k) {
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = 0.4;
      pts.push_back(e);
      pts.push_back(-e);
    }
    for (int i = 0; i < 4 * n + 2; ++i) {
      Vec v(n);
      for (int d = 0; d < n; ++d) v[d] = normal(rng);
      pts.push_back(v.normalized() * radius(rng));
    }
    out.push_back(ConvexBody::vertices(pts));
  }
  return out;
}

std::vector<Vec> random_points(int count, int n, double lo, double hi, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> r(lo, hi);
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) {
    Vec v(n);
    for (int d = 0; d < n; ++d) v[d] = normal(rng);
    out.push_back(v.normalized() * r(rng));
  }
  return out;
}

std::vector<GeomCvxFn> closed_form_family(const ConvexBody& K) {
  const int n = K.dim();
  return {GeomCvxFn::indicator(K),
          GeomCvxFn::gauge(K, 1.0),
          GeomCvxFn::gauge(K, 2.5),
          GeomCvxFn::restricted_gauge(K, ConvexBody::ball(n, 2.0)),
          GeomCvxFn::gauge_distance(K, ConvexBody::ball(n, 0.5)),
          GeomCvxFn::hinged_gauge(K, 2.0),
          GeomCvxFn::power_gauge(K, 1.0, 1.5),
          GeomCvxFn::power_gauge(K, 1.5, 1.0),
          GeomCvxFn::power_gauge(K, 2.0, 0.5),
          GeomCvxFn::power_gauge(K, 3.0, 1.0)};
}

std::vector<ConvexBody> named_bodies(int n) {
  return {ConvexBody::cube(n), ConvexBody::ball(n), ConvexBody::cross_polytope(n)};
}

const std::vector<double> kGrid{0.25, 0.5, 1.0, 2.0, 4.0};

Outcome constant_a_check() {
  const double a = constant_a();
  const double ref = oracle::constant_a();
  Outcome o{a >= 0.7 && std::abs(a - ref) <= 1e-4 && std::abs(a - 0.70904) <= 1e-4,
            "a=" + g(a) + " oracle=" + g(ref)};
  return o;
}

Outcome exponential_identity() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const auto rep = santalo_product(GeomCvxFn::gauge(ConvexBody::ball(n), 1.0));
    const double norm = oracle::factorial(n) * oracle::ball_volume(n);
    const double ratio = rep.product / (norm * norm);
    o.ok = o.ok && ratio >= 0.98 && ratio <= 1.02;
    o.detail += "n" + std::to_string(n) + ":" + g(ratio) + " ";
  }
  return o;
}

Outcome mahler_recovery() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const double cube = santalo_product(GeomCvxFn::indicator(ConvexBody::cube(n))).product;
    const double cube_ref = oracle::cube_volume(n) * oracle::cross_polytope_volume(n);
    const double ball = santalo_product(GeomCvxFn::indicator(ConvexBody::ball(n))).product;
    const double ball_ref = oracle::ball_volume(n) * oracle::ball_volume(n);
    const double ec = std::abs(cube / cube_ref - 1.0), eb = std::abs(ball / ball_ref - 1.0);
    o.ok = o.ok && ec <= 0.02 && eb <= 0.02;
    o.detail += "n" + std::to_string(n) + ":cube " + g(ec) + " ball " + g(eb) + " ";
  }
  return o;
}

Outcome quadratic_fixed_point() {
  Outcome o;
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n) {
    const auto phi = GeomCvxFn::power_gauge(ConvexBody::ball(n), 2.0, 0.5);
    const auto polar = polar_transform(phi);
    const oracle::Fn half_sq = [](const std::vector<double>& y) {
      double s = 0.0;
      for (double v : y) s += v * v;
      return 0.5 * s;
    };
    for (const Vec& x : random_points(200, n, 0.25, 3.0, rng)) {
      const std::vector<double> xs(x.data(), x.data() + n);
      const double ref = oracle::grid_sup_polar(half_sq, xs, 10.0);
      const double got = polar(x);
      worst = std::max({worst, std::abs(got - ref), std::abs(got - 0.5 * x.squaredNorm())});
    }
    const double integral = oracle::integral_exp_neg(half_sq, n, 12.0);
    const double product = santalo_product(phi).product;
    const double e1 = std::abs(product / (integral * integral) - 1.0);
    const double e2 = std::abs(product / std::pow(2.0 * std::numbers::pi, n) - 1.0);
    o.ok = o.ok && e1 <= 0.02 && e2 <= 0.02;
    o.detail += "n" + std::to_string(n) + " product err " + g(std::max(e1, e2)) + " ";
  }
  o.ok = o.ok && worst <= 1e-4;
  o.detail += "pointwise max err " + g(worst);
  return o;
}

struct GridStats {
  bool ok = true;
  double worst_margin = 0.0;
  double worst_equality = 0.0;
  std::size_t checks = 0;
  std::string first_failure;
};

std::vector<std::pair<std::string, ConvexBody>> inclusion_bodies() {
  std::vector<std::pair<std::string, ConvexBody>> out;
  for (int n = 2; n <= 3; ++n) {
    const char* names[] = {"cube", "ball", "cross"};
    auto nb = named_bodies(n);
    for (int i = 0; i < 3; ++i) out.emplace_back(std::string(names[i]) + std::to_string(n), nb[i]);
  }
  int k = 0;
  for (auto& b : random_polytopes(10, 2, 21)) out.emplace_back("rand2_" + std::to_string(k++), b);
  for (auto& b : random_polytopes(10, 3, 31)) out.emplace_back("rand3_" + std::to_string(k++), b);
  return out;
}

std::vector<std::pair<std::string, GeomCvxFn>> inclusion_functions(const ConvexBody& K) {
  const int n = K.dim();
  return {{"gauge", GeomCvxFn::gauge(K, 1.0)},
          {"indicator", GeomCvxFn::indicator(K)},
          {"restricted", GeomCvxFn::restricted_gauge(K, ConvexBody::ball(n, 2.0))},
          {"power1.5", GeomCvxFn::power_gauge(K, 1.5, 1.0)},
          {"power2", GeomCvxFn::power_gauge(K, 2.0, 1.0)},
          {"power3", GeomCvxFn::power_gauge(K, 3.0, 1.0)}};
}

template <class Verify>
Outcome inclusion_grid(Verify&& verify, bool polar_route) {
  GridStats st;
  for (const auto& [bname, K] : inclusion_bodies()) {
    const auto dirs = default_levelset_directions(K.dim());
    for (const auto& [fname, phi] : inclusion_functions(K)) {
      const bool equality = polar_route && (fname == "gauge" || fname == "indicator");
      for (double s : kGrid) {
        for (double t : kGrid) {
          const LevelSetReport r = verify(phi, s, t, dirs);
          ++st.checks;
          const double m = std::min(r.worst_first, r.worst_second);
          st.worst_margin = std::min(st.worst_margin, m);
          bool ok = r.verdict() && m >= -1e-6;
          if (equality) {
            double e = 0.0;
            for (double v : r.first_margins) e = std::max(e, std::abs(v));
            st.worst_equality = std::max(st.worst_equality, e);
            ok = ok && e <= 1e-6;
          }
          if (!ok && st.ok) {
            st.ok = false;
            st.first_failure = " first failure " + fname + "/" + bname + " s=" + g(s) + " t=" + g(t);
          }
        }
      }
    }
  }
  Outcome o{st.ok, std::to_string(st.checks) + " checks, worst margin " + g(st.worst_margin)};
  if (polar_route) o.detail += ", equality |m| max " + g(st.worst_equality);
  o.detail += st.first_failure;
  return o;
}

Outcome legendre_grid() {
  Outcome o = inclusion_grid(
      [](const GeomCvxFn& phi, double s, double t, const std::vector<Vec>& d) {
        return verify_legendre_levelsets(phi, s, t, d);
      },
      false);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto dirs = default_levelset_directions(n);
    for (const auto& K : named_bodies(n)) {
      for (const auto& phi : closed_form_family(K)) {
        for (double c : kGrid) worst = std::max(worst, legendre_polar_identity(phi, c, dirs));
      }
    }
  }
  o.ok = o.ok && worst <= 1e-6;
  o.detail += "; identity max discrepancy " + g(worst);
  return o;
}

Outcome volume_sandwich() {
  Outcome o;
  int total = 0, passed = 0, printed = 0;
  std::string first;
  for (int n = 2; n <= 3; ++n) {
    for (const auto& K : named_bodies(n)) {
      for (const auto& phi : closed_form_family(K)) {
        for (double t : {0.5, 1.0, 2.0}) {
          const auto r = volume_sandwich_check(phi, t);
          ++total;
          if (r.verdict()) {
            ++passed;
          } else if (first.empty()) {
            first = " first failure " + std::string(phi.family_name()) + " n=" + std::to_string(n) +
                    " t=" + g(t);
          }
          if (r.printed_lower_ok && r.printed_upper_ok) ++printed;
        }
      }
    }
  }
  o.ok = passed == total;
  o.detail = std::to_string(passed) + "/" + std::to_string(total) + " polar-of-level reading; " +
             std::to_string(printed) + "/" + std::to_string(total) + " level-of-phi reading" + first;
  return o;
}

Outcome facts() {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  int order_violations = 0;
  auto diff = [](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
    return std::abs(a - b) / std::max(1.0, std::abs(b));
  };
  auto off_boundary = [](const std::vector<Vec>& pts, const ConvexBody& K) {
    std::vector<Vec> out;
    for (const auto& x : pts) {
      if (std::abs(K.gauge(x) - 1.0) > 1e-3 && std::abs(K.polar().gauge(x) - 1.0) > 1e-3) out.push_back(x);
    }
    return out;
  };
  for (int n = 1; n <= 3; ++n) {
    Mat A = Mat::Identity(n, n);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) += u(rng);
    }
    const Mat AinvT = A.inverse().transpose();
    for (const auto& K : named_bodies(n)) {
      const auto pts = off_boundary(random_points(100, n, 0.05, 3.0, rng), K);
      for (const auto& phi : {GeomCvxFn::gauge(K, 1.0), GeomCvxFn::gauge(K, 0.5),
                              GeomCvxFn::indicator(K)}) {
        const auto polar = polar_transform(phi);
        const auto twice = polar_transform(polar);
        const auto composed = polar_transform(precompose_linear(phi, A));
        const auto bigger = polar_transform(precompose_linear(phi, 0.8 * Mat::Identity(n, n)));
        for (const auto& x : pts) {
          worst = std::max(worst, diff(twice(x), phi(x)));
          const Vec y = AinvT * x;
          if (std::abs(K.polar().gauge(y) - 1.0) > 1e-3) worst = std::max(worst, diff(composed(x), polar(y)));
          // phi(0.8 x) <= phi(x), so the polar order reverses.
          if (!(bigger(x) >= polar(x) - 1e-9)) ++order_violations;
        }
      }
    }
  }
  return {worst <= 1e-6 && order_violations == 0,
          "max discrepancy " + g(worst) + ", order violations " + std::to_string(order_violations)};
}

Outcome ball_inequality() {
  std::mt19937_64 rng(9);
  long pairs = 0, violations = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& K : named_bodies(n)) {
      for (const auto& phi : closed_form_family(K)) {
        const auto polar = polar_transform(phi);
        const auto xs = random_points(10000, n, 0.0, 4.0, rng);
        const auto ys = random_points(10000, n, 0.0, 4.0, rng);
        for (int i = 0; i < 10000; ++i) {
          ++pairs;
          if (!ball_pointwise_inequality(phi, polar, xs[i], ys[i])) ++violations;
        }
      }
    }
  }
  return {violations == 0, std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations"};
}

std::vector<GeomCvxFn> theorem_functions(int n) {
  const auto ball = ConvexBody::ball(n), cube = ConvexBody::cube(n);
  std::vector<GeomCvxFn> out;
  for (const auto& K : named_bodies(n)) {
    for (auto& phi : closed_form_family(K)) out.push_back(std::move(phi));
  }
  out.push_back(GeomCvxFn::gauge(ConvexBody::simplex(n), 1.0));
  out.push_back(GeomCvxFn::indicator(ConvexBody::simplex(n)));
  out.push_back(GeomCvxFn::power_gauge(ConvexBody::simplex(n), 2.0, 0.5));
  out.push_back(GeomCvxFn::max_of({GeomCvxFn::gauge(cube, 1.0), GeomCvxFn::power_gauge(ball, 2.0, 0.5)}));
  for (auto& K : random_polytopes(2, n == 1 ? 1 : n, 50 + n)) out.push_back(GeomCvxFn::gauge(K, 1.0));
  return out;
}

Outcome theorem_bounds() {
  int total = 0, passed = 0, upper_checked = 0, upper_wrong = 0;
  std::string first;
  SantaloConfig cfg;
  cfg.c_test = 0.5;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& phi : theorem_functions(n)) {
      const auto v = verify_theorem(phi, cfg);
      ++total;
      if (v.upper_checked) ++upper_checked;
      if (v.upper_checked != v.report.even) ++upper_wrong;
      if (v.passed()) {
        ++passed;
      } else if (first.empty()) {
        first = " first failure " + v.report.family + " n=" + std::to_string(n);
      }
    }
  }
  return {passed == total && upper_wrong == 0,
          std::to_string(passed) + "/" + std::to_string(total) + " passed, upper checked on " +
              std::to_string(upper_checked) + first};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "polarcvx_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, GeomCvxFn>> specs{
      {"gauge_ball3", GeomCvxFn::gauge(ConvexBody::ball(3), 1.0)},
      {"max_of2", GeomCvxFn::max_of({GeomCvxFn::gauge(ConvexBody::cube(2), 1.0),
                                     GeomCvxFn::power_gauge(ConvexBody::ball(2), 2.0, 0.5)})}};
  Outcome o;
  std::ostringstream diag;
  for (const auto& [name, phi] : specs) {
    const auto spec = dir / (name + ".json");
    std::ofstream(spec) << function_spec_json(phi);
    std::string outputs[2];
    for (int k = 0; k < 2; ++k) {
      cli::ProductArgs args;
      args.spec_path = spec.string();
      args.out_path = (dir / (name + "_" + std::to_string(k) + ".out.json")).string();
      args.seed = 17;
      cli::cmd_product(args, diag);
      outputs[k] = slurp(args.out_path);
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    o.ok = o.ok && same;
    o.detail += name + (same ? " identical " : " differs ");
  }
  return o;
}

}  // namespace

int main() {
  run(1, "constant a", constant_a_check);
  run(2, "exponential identity", exponential_identity);
  run(3, "Mahler recovery", mahler_recovery);
  run(4, "quadratic fixed point", quadratic_fixed_point);
  run(5, "polar level-set inclusions", [] {
    return inclusion_grid(
        [](const GeomCvxFn& phi, double s, double t, const std::vector<Vec>& d) {
          return verify_polar_levelsets(phi, s, t, d);
        },
        true);
  });
  run(6, "Legendre inclusions+identity", legendre_grid);
  run(7, "volume sandwich", volume_sandwich);
  run(8, "involution/order/equivariance", facts);
  run(9, "ball pointwise inequality", ball_inequality);
  run(10, "theorem bounds", theorem_bounds);
  run(11, "determinism", determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}

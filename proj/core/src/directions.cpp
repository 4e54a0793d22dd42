#include "polarcvx/directions.hpp"

#include "polarcvx/errors.hpp"

#include <boost/random/sobol.hpp>

#include <cmath>
#include <numbers>

namespace polarcvx {

namespace {

std::vector<Vec> circle(std::size_t count) {
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) /
                     static_cast<double>(count);
    Vec d(2);
    d << std::cos(a), std::sin(a);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Vec> fibonacci_sphere(std::size_t count) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    Vec d(3);
    d << rho * std::cos(phi), rho * std::sin(phi), z;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Vec> sobol_sphere(int n, std::size_t count) {
  boost::random::sobol gen(static_cast<std::size_t>(n));
  // Skip the origin-valued first point.
  gen.discard(static_cast<boost::uintmax_t>(n));
  const double scale = std::ldexp(1.0, -64);
  std::vector<Vec> out;
  out.reserve(count);
  Vec p(n);
  while (out.size() < count) {
    for (int k = 0; k < n; ++k) p[k] = 2.0 * (static_cast<double>(gen()) * scale) - 1.0;
    const double r = p.norm();
    if (r > 1.0 || r < 1e-3) continue;
    out.push_back(p / r);
  }
  return out;
}

}  // namespace

std::vector<Vec> sphere_directions(int n, std::size_t count) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (n == 1) {
    std::vector<Vec> out(2, Vec(1));
    out[0][0] = 1.0;
    out[1][0] = -1.0;
    return out;
  }
  if (count == 0) throw InvalidArgument("direction count must be positive");
  switch (n) {
    case 2:
      return circle(count);
    case 3:
      return fibonacci_sphere(count);
    default:
      return sobol_sphere(n, count);
  }
}

std::size_t default_levelset_direction_count(int n) {
  switch (n) {
    case 1:
      return 2;
    case 2:
      return 360;
    case 3:
      return 1000;
    default:
      return 4000;
  }
}

std::size_t default_volume_direction_count(int n) {
  switch (n) {
    case 1:
      return 2;
    case 2:
      return 4096;
    case 3:
      return 8192;
    default:
      return 65536;
  }
}

std::vector<Vec> coordinate_directions(int n) {
  std::vector<Vec> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(Vec::Unit(n, i));
    out.push_back(-Vec::Unit(n, i));
  }
  return out;
}

}  // namespace polarcvx

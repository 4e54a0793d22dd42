#pragma once

#include "polarcvx/types.hpp"

#include <cstddef>
#include <vector>

namespace polarcvx {

/// Deterministic quasi-uniform unit directions on S^{n-1}.
///
/// n = 1: {+1, -1} whatever the count. n = 2: equiangular. n = 3: Fibonacci
/// sphere. n >= 4: Sobol points in [-1,1]^n kept inside the unit ball and
/// normalised (uniform on the sphere by rotational symmetry). Every point
/// carries equal quadrature weight.
std::vector<Vec> sphere_directions(int n, std::size_t count);

// 360 (n=2), 1000 (n=3), 4000 (n>=4).
std::size_t default_levelset_direction_count(int n);

// Direction counts for radial volume quadrature, chosen for ~1e-4 relative
// error on polytopes.
std::size_t default_volume_direction_count(int n);

// +-e_i, the 2n coordinate directions.
std::vector<Vec> coordinate_directions(int n);

}  // namespace polarcvx

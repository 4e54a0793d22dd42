#pragma once

#include "polarcvx/types.hpp"

#include <vector>

namespace polarcvx {

/// Vertices of the polyhedron {y : <p_i, y> <= 1 for all i}.
///
/// Brute force over n-subsets of the constraints: solve the tight system,
/// keep feasible solutions, merge duplicates. Called with the vertices of a
/// polytope P (origin interior) this returns the vertices of P°, whose
/// entries are the facet normals of P scaled so each facet reads <y, x> = 1.
/// Throws Unsupported when C(m, n) exceeds kMaxEnumerationSubsets.
std::vector<Vec> dual_vertices(const std::vector<Vec>& points, int n);

// Binomial coefficient, saturating at SIZE_MAX.
std::size_t binomial(std::size_t m, std::size_t k);

}  // namespace polarcvx

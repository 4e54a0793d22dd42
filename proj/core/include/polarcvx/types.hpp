#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <vector>

namespace polarcvx {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance for geometric predicates (membership, symmetry, bipolar checks).
inline constexpr double kGeomTol = 1e-9;

// Hard limits that keep recursion and brute-force enumeration bounded.
inline constexpr int kMaxFunctionDepth = 8;
inline constexpr std::size_t kMaxEnumerationSubsets = 2'000'000;

}  // namespace polarcvx

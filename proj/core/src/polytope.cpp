#include "polarcvx/polytope.hpp"

#include "polarcvx/errors.hpp"

#include <Eigen/LU>

#include <limits>
#include <string>

namespace polarcvx {

std::size_t binomial(std::size_t m, std::size_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = m - k + i;
    if (result > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * num / i;
  }
  return result;
}

std::vector<Vec> dual_vertices(const std::vector<Vec>& points, int n) {
  const std::size_t m = points.size();
  const auto nn = static_cast<std::size_t>(n);
  if (m < nn) return {};
  const std::size_t subsets = binomial(m, nn);
  if (subsets > kMaxEnumerationSubsets) {
    throw Unsupported("polytope enumeration needs " + std::to_string(subsets) +
                      " subsets; representation too large for brute force");
  }

  std::vector<Vec> out;
  std::vector<std::size_t> idx(nn);
  for (std::size_t i = 0; i < nn; ++i) idx[i] = i;

  Mat A(n, n);
  const Vec ones = Vec::Ones(n);
  while (true) {
    for (std::size_t r = 0; r < nn; ++r) A.row(static_cast<Eigen::Index>(r)) = points[idx[r]].transpose();
    Eigen::FullPivLU<Mat> lu(A);
    lu.setThreshold(1e-12);
    if (lu.rank() == n) {
      const Vec y = lu.solve(ones);
      bool feasible = y.allFinite();
      for (std::size_t j = 0; feasible && j < m; ++j) {
        if (points[j].dot(y) > 1.0 + 1e-9) feasible = false;
      }
      if (feasible) {
        bool dup = false;
        for (const Vec& v : out) {
          if ((v - y).norm() <= 1e-9 * (1.0 + y.norm())) {
            dup = true;
            break;
          }
        }
        if (!dup) out.push_back(y);
      }
    }
    // next combination
    std::size_t k = nn;
    while (k > 0 && idx[k - 1] == m - nn + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < nn; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace polarcvx

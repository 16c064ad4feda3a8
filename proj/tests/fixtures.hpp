#pragma once

#include <Eigen/LU>
#include <optional>
#include <vector>

#include "facet/lp.hpp"

namespace fixtures {

// Three small 2x5 systems with fully known basis structure, used as
// golden instances throughout the tests.

/// Strict feasibility fails (witness y = (1, -1)); six feasible bases,
/// two distinct extreme points, every basic feasible solution degenerate.
inline facet::StandardFormLP no_slater_2x5() {
  facet::StandardFormLP lp;
  lp.A.resize(2, 5);
  lp.A << 1, 1, 3, 5, 2,
          0, 1, 2, -2, 2;
  lp.b.resize(2);
  lp.b << 1, 1;
  lp.c = facet::Vector::Ones(5);
  return lp;
}

/// Strictly feasible; four feasible bases, the one on columns {0, 4}
/// nondegenerate with point (5, 0, 0, 0, 1).
inline facet::StandardFormLP one_nondegenerate_2x5() {
  facet::StandardFormLP lp;
  lp.A.resize(2, 5);
  lp.A << 1, 0, -2, 3, -4,
          0, -1, -2, 3, 1;
  lp.b.resize(2);
  lp.b << 1, 1;
  lp.c = facet::Vector::Ones(5);
  return lp;
}

/// Strictly feasible although every basic feasible solution is
/// degenerate; shows the degeneracy test cannot be inverted.
inline facet::StandardFormLP degenerate_slater_2x5() {
  facet::StandardFormLP lp;
  lp.A.resize(2, 5);
  lp.A << 1, 0, 2, 0, -2,
          1, -3, 2, 1, -2;
  lp.b.resize(2);
  lp.b << 1, 1;
  lp.c = facet::Vector::Ones(5);
  return lp;
}

}  // namespace fixtures

namespace oracle {

// Brute-force ground truth, written independently of the library's
// enumeration path: walks every m-subset recursively, solves the basis
// system with full-pivot LU and filters on feasibility.

inline void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_rec(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<facet::Vector> feasible_basic_points(
    const facet::Matrix& A, const facet::Vector& b, double feas_tol = 1e-7) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  subsets_rec(n, m, 0, cur, subsets);

  std::vector<facet::Vector> points;
  for (const auto& cols : subsets) {
    facet::Matrix B(m, m);
    for (int k = 0; k < m; ++k) B.col(k) = A.col(cols[k]);
    Eigen::FullPivLU<facet::Matrix> lu(B);
    if (!lu.isInvertible()) continue;
    const facet::Vector xb = lu.solve(b);
    if (xb.minCoeff() < -feas_tol) continue;
    facet::Vector x = facet::Vector::Zero(n);
    for (int k = 0; k < m; ++k) x(cols[k]) = xb(k);
    if ((A * x - b).norm() > feas_tol * (1.0 + b.norm())) continue;
    bool seen = false;
    for (const auto& p : points) {
      if ((p - x).cwiseAbs().maxCoeff() <= 1e-7) {
        seen = true;
        break;
      }
    }
    if (!seen) points.push_back(std::move(x));
  }
  return points;
}

inline std::optional<double> vertex_minimum(const facet::Matrix& A,
                                            const facet::Vector& b,
                                            const facet::Vector& c) {
  const auto points = feasible_basic_points(A, b);
  if (points.empty()) return std::nullopt;
  double best = c.dot(points.front());
  for (const auto& p : points) best = std::min(best, c.dot(p));
  return best;
}

}  // namespace oracle

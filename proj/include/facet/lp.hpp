#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "facet/errors.hpp"
#include "facet/tolerances.hpp"

namespace facet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Sorted set of 0-based indices.
using IndexSet = std::vector<int>;

/// Standard-form linear program  min { c'x : Ax = b, x >= 0 }.
struct StandardFormLP {
  Matrix A;
  Vector b;
  Vector c;
  std::vector<std::string> names;  // optional; length n when present

  /// Set by validate() once rank(A) = m has been confirmed numerically.
  /// Solver and reduction operations require a validated program.
  bool full_row_rank_checked = false;

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }

  /// Content hash over dimensions and the raw bits of A, b, c.
  std::uint64_t digest() const;
};

/// A basis: m strictly increasing column indices.
struct Basis {
  IndexSet indices;
};

/// Basic solution for a basis. Nonbasic entries are exact zeros; the
/// point is returned even when infeasible (negative basic entries).
struct BasisPoint {
  Basis basis;
  Vector x;
  int degeneracy_degree = 0;
};

struct EnumerateOptions {
  std::uint64_t max_subsets = 1'000'000;
};

/// Exhaustive list of feasible bases of a small program.
struct BfsEnumeration {
  std::uint64_t lp_digest = 0;
  std::vector<BasisPoint> entries;        // lexicographic basis order
  std::vector<Vector> distinct_points;    // deduplicated extreme points
  bool all_degenerate = false;
};

/// Checks dimensions, finiteness and rank(A) = m (rank-revealing QR).
/// Throws DimensionMismatch, NonFiniteData or RankDeficient; the latter
/// signals that redundant rows must be removed before solving.
StandardFormLP validate(StandardFormLP lp);

/// Solves A(:,basis) x_B = b. Throws SingularBasis when the basis matrix
/// condition estimate exceeds the rank threshold.
BasisPoint basis_solve(const StandardFormLP& lp, const Basis& basis);

/// Visits every size-m column subset in lexicographic order and collects
/// the feasible ones. Throws EnumerationTooLarge past opts.max_subsets
/// and Infeasible when no feasible basis exists.
BfsEnumeration enumerate_bfs(const StandardFormLP& lp,
                             const EnumerateOptions& opts = {});

/// True iff min_i x_i is above the zero threshold and ||Ax - b|| is
/// within the relative feasibility tolerance.
bool is_strictly_feasible_point(const StandardFormLP& lp, const Vector& x);

/// Number of basic entries of the point that vanish at the zero threshold.
int degeneracy_degree(const BasisPoint& point);

/// Residual check ||Ax - b|| <= kFeas * (1 + ||b||).
bool satisfies_equalities(const StandardFormLP& lp, const Vector& x);

}  // namespace facet

#include "facet/lp.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cstring>

namespace facet {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t fnv1a(std::uint64_t h, const Vector& v) {
  return fnv1a(h, v.data(), sizeof(double) * static_cast<std::size_t>(v.size()));
}

void check_shape(const StandardFormLP& lp) {
  const Eigen::Index m = lp.rows();
  const Eigen::Index n = lp.cols();
  if (m < 1 || n < m) {
    throw DimensionMismatch("need 1 <= m <= n, got m=" + std::to_string(m) +
                            " n=" + std::to_string(n));
  }
  if (lp.b.size() != m) throw DimensionMismatch("b length does not match rows of A");
  if (lp.c.size() != n) throw DimensionMismatch("c length does not match cols of A");
  if (!lp.names.empty() && static_cast<Eigen::Index>(lp.names.size()) != n) {
    throw DimensionMismatch("names length does not match cols of A");
  }
}

// Lexicographically next size-k subset of {0..n-1}; false when exhausted.
bool next_subset(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

int count_basic_zeros(const Vector& x, const IndexSet& basis) {
  const double tau = tol::zero(x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
  int zeros = 0;
  for (int i : basis) {
    if (std::abs(x(i)) <= tau) ++zeros;
  }
  return zeros;
}

}  // namespace

std::uint64_t StandardFormLP::digest() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  const std::int64_t dims[2] = {rows(), cols()};
  h = fnv1a(h, dims, sizeof(dims));
  h = fnv1a(h, A.data(), sizeof(double) * static_cast<std::size_t>(A.size()));
  h = fnv1a(h, b);
  h = fnv1a(h, c);
  return h;
}

StandardFormLP validate(StandardFormLP lp) {
  check_shape(lp);
  if (!lp.A.allFinite() || !lp.b.allFinite() || !lp.c.allFinite()) {
    throw NonFiniteData("A, b or c contains NaN or infinite entries");
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(lp.A);
  qr.setThreshold(tol::rank_rel(lp.rows(), lp.cols()));
  if (qr.rank() < lp.rows()) {
    throw RankDeficient("rank(A) = " + std::to_string(qr.rank()) + " < m = " +
                        std::to_string(lp.rows()) +
                        "; remove redundant rows first");
  }
  lp.full_row_rank_checked = true;
  return lp;
}

BasisPoint basis_solve(const StandardFormLP& lp, const Basis& basis) {
  const Eigen::Index m = lp.rows();
  const Eigen::Index n = lp.cols();
  if (static_cast<Eigen::Index>(basis.indices.size()) != m) {
    throw DimensionMismatch("basis must have exactly m indices");
  }
  for (std::size_t k = 0; k < basis.indices.size(); ++k) {
    const int i = basis.indices[k];
    if (i < 0 || i >= n) throw DimensionMismatch("basis index out of range");
    if (k > 0 && basis.indices[k - 1] >= i) {
      throw DimensionMismatch("basis indices must be strictly increasing");
    }
  }

  Matrix B(m, m);
  for (Eigen::Index k = 0; k < m; ++k) B.col(k) = lp.A.col(basis.indices[k]);
  Eigen::PartialPivLU<Matrix> lu(B);
  if (!(lu.rcond() > tol::rank_rel(m, m))) {
    throw SingularBasis("basis matrix condition estimate exceeds threshold");
  }
  const Vector xb = lu.solve(lp.b);
  if (!xb.allFinite()) throw SingularBasis("basis solve produced non-finite values");

  BasisPoint point;
  point.basis = basis;
  point.x = Vector::Zero(n);
  for (Eigen::Index k = 0; k < m; ++k) point.x(basis.indices[k]) = xb(k);
  point.degeneracy_degree = count_basic_zeros(point.x, basis.indices);
  return point;
}

int degeneracy_degree(const BasisPoint& point) {
  return count_basic_zeros(point.x, point.basis.indices);
}

bool satisfies_equalities(const StandardFormLP& lp, const Vector& x) {
  if (x.size() != lp.cols()) throw DimensionMismatch("point length mismatch");
  return (lp.A * x - lp.b).norm() <= tol::kFeas * (1.0 + lp.b.norm());
}

bool is_strictly_feasible_point(const StandardFormLP& lp, const Vector& x) {
  if (x.size() != lp.cols()) throw DimensionMismatch("point length mismatch");
  if (x.size() == 0) return satisfies_equalities(lp, x);
  const double tau = tol::zero(x.cwiseAbs().maxCoeff());
  return x.minCoeff() > tau && satisfies_equalities(lp, x);
}

BfsEnumeration enumerate_bfs(const StandardFormLP& lp,
                             const EnumerateOptions& opts) {
  StandardFormLP checked;
  const StandardFormLP& v =
      lp.full_row_rank_checked ? lp : (checked = validate(lp), checked);

  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());

  // C(n, m) with overflow-safe cap check.
  std::uint64_t subsets = 1;
  for (int i = 1; i <= m; ++i) {
    subsets = subsets * static_cast<std::uint64_t>(n - m + i) /
              static_cast<std::uint64_t>(i);
    if (subsets > opts.max_subsets) {
      throw EnumerationTooLarge("C(n,m) exceeds cap of " +
                                std::to_string(opts.max_subsets));
    }
  }

  BfsEnumeration out;
  out.lp_digest = v.digest();

  const double rank_tau = tol::rank_rel(m, m);
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;

  Matrix B(m, m);
  do {
    for (int k = 0; k < m; ++k) B.col(k) = v.A.col(idx[k]);
    Eigen::PartialPivLU<Matrix> lu(B);
    if (!(lu.rcond() > rank_tau)) continue;
    const Vector xb = lu.solve(v.b);
    if (!xb.allFinite()) continue;
    const double tau = tol::zero(xb.cwiseAbs().maxCoeff());
    if (xb.minCoeff() < -tau) continue;

    BasisPoint point;
    point.basis.indices = idx;
    point.x = Vector::Zero(n);
    for (int k = 0; k < m; ++k) point.x(idx[k]) = xb(k);
    if (!satisfies_equalities(v, point.x)) continue;
    point.degeneracy_degree = count_basic_zeros(point.x, idx);
    out.entries.push_back(std::move(point));
  } while (next_subset(idx, n));

  if (out.entries.empty()) throw Infeasible("no feasible basis found");

  out.all_degenerate = true;
  for (const BasisPoint& e : out.entries) {
    if (e.degeneracy_degree == 0) out.all_degenerate = false;
    bool duplicate = false;
    for (const Vector& p : out.distinct_points) {
      if ((p - e.x).cwiseAbs().maxCoeff() <= tol::kDedup) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.distinct_points.push_back(e.x);
  }

  // Every extreme point of a standard-form program has at most m
  // positive entries; a violation here is a bug, not bad input.
  for (const Vector& p : out.distinct_points) {
    const double tau = tol::zero(p.cwiseAbs().maxCoeff());
    const auto positives = (p.array() > tau).count();
    if (positives > m) {
      throw InternalError("extreme point with more than m positive entries");
    }
  }
  return out;
}

}  // namespace facet

#include "facet/facial_reduction.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "facet/solvers.hpp"

namespace facet {

namespace {

IndexSet complement(const IndexSet& sorted, int n) {
  IndexSet out;
  out.reserve(n - static_cast<int>(sorted.size()));
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    if (k < sorted.size() && sorted[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

Matrix select_columns(const Matrix& A, const IndexSet& cols) {
  Matrix out(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(k) = A.col(cols[k]);
  return out;
}

// Solves a small helper program: interior-point first, Bland simplex as
// the fallback. Both sides of the alternative are read off the primal
// solution, so any exact optimizer works.
Vector solve_auxiliary(StandardFormLP aux, const char* what) {
  const StandardFormLP lp = validate(std::move(aux));
  try {
    IpmResult r = solve_ipm(lp);
    if (r.converged) return r.x;
  } catch (const NumericalBreakdown&) {
    // fall through to simplex
  }
  try {
    SimplexResult s = solve_simplex(lp, {.rule = PivotRule::Bland});
    if (s.status == SimplexStatus::Optimal) return s.x;
  } catch (const Error&) {
    // reported below
  }
  throw AuxiliarySolveFailed(std::string(what) +
                             ": auxiliary program did not solve to tolerance");
}

// Box cap on candidate exposing vectors; keeps the auxiliary feasible
// region compact. Coordinates whose witness values would have to differ
// by more than this factor are picked up by a later reduction round.
constexpr double kExposingCap = 1e4;

//   max sum(s)  s.t.  z in {A'y : <b, y> = 0},  z >= s,  0 <= s <= 1,
//                     z <= cap,
// written over z directly: the membership constraint is C z = 0, where
// the rows of C span the orthogonal complement of the subspace. Every
// feasible z is nonnegative (z >= s >= 0), so no variable is free and
// the feasible region is a polytope. Column layout: [z s u t w] with
// z - s - u = 0, s + t = 1, z + w = cap.
StandardFormLP build_exposing_aux(const Matrix& A, const Vector& b) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();

  // Orthonormal basis of {b}^perp (all of R^m when b = 0), then the
  // orthogonal complement of {(N'A)' q} in R^n.
  Matrix tangent;  // rows span { z : z orthogonal to the subspace }
  if (b.cwiseAbs().maxCoeff() > 0.0 && m == 1) {
    tangent = Matrix::Identity(n, n);  // <b,y> = 0 forces y = 0, z = 0
  } else if (b.cwiseAbs().maxCoeff() > 0.0) {
    Eigen::HouseholderQR<Matrix> qr(b);
    const Matrix Q = qr.householderQ() * Matrix::Identity(m, m);
    const Matrix NtA = Q.rightCols(m - 1).transpose() * A;  // (m-1) x n
    Eigen::HouseholderQR<Matrix> qr2(NtA.transpose());
    const Matrix Q2 = qr2.householderQ() * Matrix::Identity(n, n);
    tangent = Q2.rightCols(n - (m - 1)).transpose();
  } else {
    Eigen::HouseholderQR<Matrix> qr2(A.transpose());
    const Matrix Q2 = qr2.householderQ() * Matrix::Identity(n, n);
    tangent = Q2.rightCols(n - m).transpose();
  }
  const Eigen::Index k = tangent.rows();

  StandardFormLP aux;
  const Eigen::Index rows = k + 3 * n;
  const Eigen::Index cols = 5 * n;
  aux.A = Matrix::Zero(rows, cols);
  aux.A.block(0, 0, k, n) = tangent;                               // C z = 0
  aux.A.block(k, 0, n, n) = Matrix::Identity(n, n);                // z
  aux.A.block(k, n, n, n) = -Matrix::Identity(n, n);               // - s
  aux.A.block(k, 2 * n, n, n) = -Matrix::Identity(n, n);           // - u
  aux.A.block(k + n, n, n, n) = Matrix::Identity(n, n);            // s
  aux.A.block(k + n, 3 * n, n, n) = Matrix::Identity(n, n);        // + t
  aux.A.block(k + 2 * n, 0, n, n) = Matrix::Identity(n, n);        // z
  aux.A.block(k + 2 * n, 4 * n, n, n) = Matrix::Identity(n, n);    // + w
  aux.b = Vector::Zero(rows);
  aux.b.segment(k + n, n).setOnes();
  aux.b.segment(k + 2 * n, n).setConstant(kExposingCap);
  aux.c = Vector::Zero(cols);
  aux.c.segment(n, n).setConstant(-1.0);
  return aux;
}

// Projects y onto { y : A(:,off)'y = 0, <b,y> = 0 }, recomputes z = A'y
// and packages a certificate with the exposed set fixed to `support`.
// Returns nullopt when the polished vector stops witnessing the set.
std::optional<ExposingCertificate> polish_to_support(const Matrix& A,
                                                     const Vector& b,
                                                     const Vector& y,
                                                     const IndexSet& support) {
  const int n = static_cast<int>(A.cols());
  const IndexSet off = complement(support, n);

  Matrix constraints(off.size() + 1, A.rows());
  for (std::size_t k = 0; k < off.size(); ++k) {
    constraints.row(k) = A.col(off[k]).transpose();
  }
  constraints.row(off.size()) = b.transpose();

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(constraints);
  const Vector y_clean = y - cod.solve(constraints * y);

  Vector z = A.transpose() * y_clean;
  const double scale = z.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return std::nullopt;

  ExposingCertificate cert;
  cert.y = y_clean / scale;
  cert.z = A.transpose() * cert.y;
  cert.support = support;
  cert.tolerance_used = tol::kSupport;

  // The polished vector must stay a witness: nonnegative up to the
  // support tolerance, strictly positive on the support, orthogonal to b.
  if (cert.support.empty()) return std::nullopt;
  if (cert.z.minCoeff() < -cert.tolerance_used) return std::nullopt;
  for (int i : cert.support) {
    if (!(cert.z(i) > 0.0)) return std::nullopt;
  }
  if (std::abs(b.dot(cert.y)) >
      tol::kCert * (1.0 + b.norm()) * cert.y.norm()) {
    return std::nullopt;
  }
  return cert;
}

std::optional<ExposingCertificate> find_exposing_impl(const Matrix& A,
                                                      const Vector& b) {
  const Eigen::Index n = A.cols();

  StandardFormLP aux = build_exposing_aux(A, b);
  const Vector sol = solve_auxiliary(std::move(aux), "exposing vector");

  const double exposed_mass = sol.segment(n, n).sum();
  if (exposed_mass <= tol::kCert) return std::nullopt;  // strictly feasible

  Vector z = sol.head(n);
  const double scale = z.cwiseAbs().maxCoeff();
  if (!(scale > tol::kCert)) {
    throw AuxiliarySolveFailed("exposing vector: positive mass but trivial z");
  }
  z /= scale;
  IndexSet support;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (z(i) > tol::kSupport) support.push_back(static_cast<int>(i));
  }
  if (support.empty()) {
    throw AuxiliarySolveFailed("exposing vector: empty support after scaling");
  }

  // z determines y uniquely; A' is injective for full-row-rank A.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A.transpose());
  const Vector y = cod.solve(z);

  auto cert = polish_to_support(A, b, y, support);
  if (!cert) {
    throw AuxiliarySolveFailed("exposing vector: certificate failed validation");
  }
  return cert;
}

// Interior-point finder for a strictly feasible program:
//   max delta  s.t.  A v = b,  v >= delta*1,  delta <= 1,  v <= cap.
// The cap keeps the feasible region compact when A has a nonnegative
// null vector. Column layout: [v delta w zeta rho]; returns (v, delta).
std::pair<Vector, double> find_interior_point(const Matrix& A,
                                              const Vector& b) {
  constexpr double kInteriorCap = 1e4;
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  StandardFormLP aux;
  const Eigen::Index rows = m + 2 * n + 1;
  const Eigen::Index cols = 3 * n + 2;
  aux.A = Matrix::Zero(rows, cols);
  aux.A.block(0, 0, m, n) = A;
  aux.A.block(m, 0, n, n) = Matrix::Identity(n, n);        // v
  aux.A.block(m, n, n, 1) = -Vector::Ones(n);              // - delta
  aux.A.block(m, n + 1, n, n) = -Matrix::Identity(n, n);   // - w
  aux.A(m + n, n) = 1.0;                                   // delta
  aux.A(m + n, 2 * n + 1) = 1.0;                           // + zeta
  aux.A.block(m + n + 1, 0, n, n) = Matrix::Identity(n, n);  // v
  aux.A.block(m + n + 1, 2 * n + 2, n, n) = Matrix::Identity(n, n);  // + rho
  aux.b = Vector::Zero(rows);
  aux.b.head(m) = b;
  aux.b(m + n) = 1.0;
  aux.b.tail(n).setConstant(kInteriorCap);
  aux.c = Vector::Zero(cols);
  aux.c(n) = -1.0;

  const Vector sol = solve_auxiliary(std::move(aux), "interior point");
  Vector v = sol.head(n);
  // The box rows dilute the auxiliary feasibility normalization; project
  // back onto A v = b so the witness meets the strict tolerance.
  if (m > 0) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    v -= cod.solve(A * v - b);
  }
  return {v, sol(n)};
}

const StandardFormLP& ensure_validated(const StandardFormLP& lp,
                                       StandardFormLP& storage) {
  if (lp.full_row_rank_checked) return lp;
  storage = validate(lp);
  return storage;
}

}  // namespace

std::optional<ExposingCertificate> find_exposing_vector(
    const StandardFormLP& lp) {
  StandardFormLP storage;
  const StandardFormLP& v = ensure_validated(lp, storage);
  return find_exposing_impl(v.A, v.b);
}

IndexSet facial_range(const ExposingCertificate& cert, int n) {
  for (int i : cert.support) {
    if (i < 0 || i >= n) throw DimensionMismatch("support index out of range");
  }
  return complement(cert.support, n);
}

RowSelection remove_redundant_rows(const Matrix& M, const Vector& rhs) {
  if (rhs.size() != M.rows()) {
    throw DimensionMismatch("rhs length does not match rows of M");
  }
  RowSelection out;
  if (M.rows() == 0) {
    out.M_kept = M;
    out.rhs_kept = rhs;
    return out;
  }

  Eigen::Index rank = 0;
  if (M.cols() > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(M.transpose());
    qr.setThreshold(tol::rank_rel(M.rows(), M.cols()));
    rank = qr.rank();
    const auto& perm = qr.colsPermutation().indices();
    out.kept_rows.reserve(rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
      out.kept_rows.push_back(static_cast<int>(perm(k)));
    }
    std::sort(out.kept_rows.begin(), out.kept_rows.end());
  }

  out.M_kept.resize(rank, M.cols());
  out.rhs_kept.resize(rank);
  for (Eigen::Index k = 0; k < rank; ++k) {
    out.M_kept.row(k) = M.row(out.kept_rows[k]);
    out.rhs_kept(k) = rhs(out.kept_rows[k]);
  }

  if (rank < M.rows()) {
    // Discarded rows must agree with the kept span, else the system is
    // infeasible rather than merely redundant.
    Vector probe;
    if (rank > 0) {
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(out.M_kept);
      probe = cod.solve(out.rhs_kept);
    } else {
      probe = Vector::Zero(M.cols());
    }
    const double residual = (M * probe - rhs).norm();
    if (residual > tol::kFeas * (1.0 + rhs.norm())) {
      throw InconsistentRedundantRow(
          "dropped rows contradict the right-hand side (residual " +
          std::to_string(residual) + ")");
    }
  }
  return out;
}

FacialReduction facially_reduce(const StandardFormLP& lp) {
  StandardFormLP storage;
  const StandardFormLP& v = ensure_validated(lp, storage);
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());

  FacialReduction red;
  red.original_digest = v.digest();
  red.original_rows = m;
  red.original_cols = n;
  red.kept_columns = complement({}, n);
  red.kept_rows = complement({}, m);

  Matrix A_cur = v.A;
  Vector b_cur = v.b;
  Vector y_combined;
  double min_support_z = 0.0;

  for (;;) {
    auto cert = find_exposing_impl(A_cur, b_cur);
    if (!cert) break;
    ++red.reduction_rounds;
    if (red.reduction_rounds > n) {
      throw InternalError("facial reduction failed to terminate");
    }

    // Lift the round's certificate into original row coordinates and
    // fold it into the combined exposing vector.
    Vector y_orig = Vector::Zero(m);
    for (std::size_t k = 0; k < red.kept_rows.size(); ++k) {
      y_orig(red.kept_rows[k]) = cert->y(k);
    }
    if (red.reduction_rounds == 1) {
      y_combined = y_orig;
      min_support_z = 1.0;
      for (int i : cert->support) {
        min_support_z = std::min(min_support_z, cert->z(i));
      }
    } else {
      const double z_new_scale =
          (v.A.transpose() * y_orig).cwiseAbs().maxCoeff();
      const double eps = 0.5 * min_support_z / std::max(1.0, z_new_scale);
      y_combined += eps * y_orig;
      min_support_z *= 0.5;
    }

    // Columns exposed this round, in original ids.
    IndexSet dropped;
    dropped.reserve(cert->support.size());
    for (int i : cert->support) dropped.push_back(red.kept_columns[i]);
    IndexSet next_kept;
    next_kept.reserve(red.kept_columns.size() - dropped.size());
    std::set_difference(red.kept_columns.begin(), red.kept_columns.end(),
                        dropped.begin(), dropped.end(),
                        std::back_inserter(next_kept));
    red.kept_columns = std::move(next_kept);

    if (red.kept_columns.empty() &&
        v.b.cwiseAbs().maxCoeff() > tol::kFeas * (1.0 + v.b.norm())) {
      throw EmptyFace("every column is exposed but b is nonzero");
    }

    const Matrix AV = select_columns(v.A, red.kept_columns);
    RowSelection sel = remove_redundant_rows(AV, v.b);
    red.kept_rows = sel.kept_rows;
    A_cur = std::move(sel.M_kept);
    b_cur = std::move(sel.rhs_kept);
    if (red.kept_columns.empty()) break;
  }

  red.A_reduced = A_cur;
  red.b_reduced = b_cur;

  if (red.reduction_rounds > 0) {
    if (static_cast<int>(red.kept_rows.size()) >= m) {
      throw LemmaViolation(
          "certificate exists but no constraint became redundant");
    }
    auto combined =
        polish_to_support(v.A, v.b, y_combined, complement(red.kept_columns, n));
    if (!combined) {
      throw AuxiliarySolveFailed(
          "combined exposing certificate failed validation");
    }
    red.certificate = std::move(*combined);
  }

  // Strict feasibility of the reduced program, with a stored witness.
  if (red.kept_columns.empty()) {
    red.slater_verified = true;  // zero-variable system, vacuously strict
    red.slater_witness = Vector(0);
    return red;
  }
  auto [witness, radius] = find_interior_point(red.A_reduced, red.b_reduced);
  StandardFormLP reduced;
  reduced.A = red.A_reduced;
  reduced.b = red.b_reduced;
  reduced.c = Vector::Zero(red.A_reduced.cols());
  reduced.full_row_rank_checked = true;
  red.slater_verified =
      radius > tol::kCert && is_strictly_feasible_point(reduced, witness);
  red.slater_witness = std::move(witness);
  return red;
}

Vector lift(const FacialReduction& red, const Vector& v) {
  if (v.size() != static_cast<Eigen::Index>(red.kept_columns.size())) {
    throw DimensionMismatch("reduced point length does not match kept columns");
  }
  Vector x = Vector::Zero(red.original_cols);
  for (std::size_t k = 0; k < red.kept_columns.size(); ++k) {
    x(red.kept_columns[k]) = v(k);
  }
  return x;
}

Vector restrict(const FacialReduction& red, const Vector& x) {
  if (x.size() != red.original_cols) {
    throw DimensionMismatch("point length does not match the original program");
  }
  const double tau = tol::zero(x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
  IndexSet kept = red.kept_columns;
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (k < kept.size() && kept[k] == i) {
      ++k;
    } else if (std::abs(x(i)) > tau) {
      throw NotInFace("point has mass on exposed coordinate " +
                      std::to_string(i));
    }
  }
  Vector v(kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j) v(j) = x(kept[j]);
  return v;
}

std::optional<DualExposingCertificate> find_dual_exposing_vector(
    const StandardFormLP& lp) {
  StandardFormLP storage;
  const StandardFormLP& v = ensure_validated(lp, storage);
  const Eigen::Index m = v.rows();
  const Eigen::Index n = v.cols();

  // Equality block: independent rows of [A; c'] (c' may be implied by A).
  Matrix AC(m + 1, n);
  AC.topRows(m) = v.A;
  AC.row(m) = v.c.transpose();
  RowSelection eq = remove_redundant_rows(AC, Vector::Zero(m + 1));
  const Eigen::Index me = eq.M_kept.rows();

  //   max sum(t)  s.t.  w - t - u = 0,  t + tv = 1,  w + omega = cap,
  //                     E w = 0.
  // Column layout: [w t u tv omega]; the cap keeps w bounded.
  constexpr double kDualCap = 1e4;
  StandardFormLP aux;
  const Eigen::Index rows = 3 * n + me;
  const Eigen::Index cols = 5 * n;
  aux.A = Matrix::Zero(rows, cols);
  aux.A.block(0, 0, n, n) = Matrix::Identity(n, n);
  aux.A.block(0, n, n, n) = -Matrix::Identity(n, n);
  aux.A.block(0, 2 * n, n, n) = -Matrix::Identity(n, n);
  aux.A.block(n, n, n, n) = Matrix::Identity(n, n);
  aux.A.block(n, 3 * n, n, n) = Matrix::Identity(n, n);
  aux.A.block(2 * n, 0, n, n) = Matrix::Identity(n, n);
  aux.A.block(2 * n, 4 * n, n, n) = Matrix::Identity(n, n);
  aux.A.block(3 * n, 0, me, n) = eq.M_kept;
  aux.b = Vector::Zero(rows);
  aux.b.segment(n, n).setOnes();
  aux.b.segment(2 * n, n).setConstant(kDualCap);
  aux.c = Vector::Zero(cols);
  aux.c.segment(n, n).setConstant(-1.0);

  const Vector sol = solve_auxiliary(std::move(aux), "dual exposing vector");
  if (sol.segment(n, n).sum() <= tol::kCert) return std::nullopt;

  Vector w = sol.head(n);
  const double scale = w.cwiseAbs().maxCoeff();
  if (!(scale > tol::kCert)) {
    throw AuxiliarySolveFailed("dual exposing vector: trivial w");
  }
  w /= scale;
  IndexSet support;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w(i) > tol::kSupport) support.push_back(static_cast<int>(i));
  }
  if (support.empty()) {
    throw AuxiliarySolveFailed("dual exposing vector: empty support");
  }

  // Polish: restrict to the support and project onto the null space of
  // [A(:,support); c(support)'], making off-support entries exact zeros.
  Matrix constraints(m + 1, static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) {
    constraints.col(k).head(m) = v.A.col(support[k]);
    constraints(m, k) = v.c(support[k]);
  }
  Vector ws(support.size());
  for (std::size_t k = 0; k < support.size(); ++k) ws(k) = w(support[k]);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(constraints);
  const Vector ws_clean = ws - cod.solve(constraints * ws);

  Vector w_clean = Vector::Zero(n);
  bool positive = ws_clean.size() > 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (!(ws_clean(k) > 0.0)) positive = false;
    w_clean(support[k]) = ws_clean(k);
  }
  if (positive) {
    w = w_clean / w_clean.cwiseAbs().maxCoeff();
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!std::binary_search(support.begin(), support.end(),
                              static_cast<int>(i))) {
        w(i) = 0.0;  // keep U'w = 0 exact even when the polish is skipped
      }
    }
  }

  DualExposingCertificate cert;
  cert.w = w;
  cert.support = support;
  const double wn = cert.w.norm();
  if ((v.A * cert.w).norm() > tol::kCert * (1.0 + v.A.norm()) * wn ||
      std::abs(v.c.dot(cert.w)) > tol::kCert * (1.0 + v.c.norm()) * wn) {
    throw AuxiliarySolveFailed("dual exposing vector failed validation");
  }
  return cert;
}

DualFacialReduction dual_facially_reduce(const StandardFormLP& lp) {
  StandardFormLP storage;
  const StandardFormLP& v = ensure_validated(lp, storage);
  const int n = static_cast<int>(v.cols());

  DualFacialReduction out;
  auto cert = find_dual_exposing_vector(v);
  if (!cert) {
    out.kept_slack_columns = complement({}, n);
    out.redundant_row_found = false;
    return out;
  }
  out.kept_slack_columns = complement(cert->support, n);

  // Stacked matrix [A' U]; w is a null row combination because Aw = 0
  // and w vanishes on the kept slack set.
  Matrix stacked(n, v.rows() + static_cast<Eigen::Index>(
                                   out.kept_slack_columns.size()));
  stacked.leftCols(v.rows()) = v.A.transpose();
  stacked.rightCols(out.kept_slack_columns.size()).setZero();
  for (std::size_t k = 0; k < out.kept_slack_columns.size(); ++k) {
    stacked(out.kept_slack_columns[k], v.rows() + static_cast<Eigen::Index>(k)) =
        1.0;
  }
  const double null_residual =
      (stacked.transpose() * cert->w).cwiseAbs().maxCoeff();
  Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
  qr.setThreshold(tol::rank_rel(stacked.rows(), stacked.cols()));

  out.redundant_row_found =
      null_residual <= tol::kCert * (1.0 + v.A.norm()) * cert->w.norm() &&
      qr.rank() < n;
  out.certificate = std::move(*cert);
  return out;
}

}  // namespace facet

#pragma once

#include <cstdint>
#include <optional>

#include "facet/lp.hpp"

namespace facet {

/// Witness that { x >= 0 : Ax = b } has no strictly positive point:
/// z = A'y is nonnegative and nonzero with <b, y> = 0, so every feasible
/// x vanishes on the support of z.
struct ExposingCertificate {
  Vector y;          // normalized so ||z||_inf = 1
  Vector z;          // exactly A'y
  IndexSet support;  // { i : z_i > support threshold }
  double tolerance_used = tol::kSupport;
};

/// Witness that the dual slack cone has no strictly positive point:
/// w >= 0, w != 0, Aw = 0 and <c, w> = 0 force s to vanish on supp(w).
struct DualExposingCertificate {
  Vector w;  // normalized so ||w||_inf = 1
  IndexSet support;
};

/// Result of the two-step reduction: columns exposed by the certificate
/// are dropped, then linearly dependent rows of the remaining matrix.
struct FacialReduction {
  std::uint64_t original_digest = 0;
  int original_rows = 0;
  int original_cols = 0;
  IndexSet kept_columns;
  IndexSet kept_rows;
  Matrix A_reduced;  // |kept_rows| x |kept_columns|
  Vector b_reduced;
  std::optional<ExposingCertificate> certificate;  // absent: already strict
  bool slater_verified = false;
  Vector slater_witness;  // reduced-space interior point when verified
  int reduction_rounds = 0;  // certificate rounds; expected at most 1
};

struct DualFacialReduction {
  IndexSet kept_slack_columns;  // complement of supp(w); selects U = I(:, .)
  std::optional<DualExposingCertificate> certificate;
  bool redundant_row_found = false;
};

/// Maximum-support exposing vector, or nullopt when the program is
/// strictly feasible. Solved through the auxiliary program
///   max sum(s)  s.t.  A'y >= s, 0 <= s <= 1, <b, y> = 0,
/// whose every optimum carries the full exposable support.
/// Throws AuxiliarySolveFailed when the auxiliary solve does not
/// converge; the failure is propagated, never guessed around.
std::optional<ExposingCertificate> find_exposing_vector(
    const StandardFormLP& lp);

/// Columns kept by the certificate: {0..n-1} minus the support.
IndexSet facial_range(const ExposingCertificate& cert, int n);

struct RowSelection {
  IndexSet kept_rows;
  Matrix M_kept;
  Vector rhs_kept;
};

/// Maximal linearly independent row subset by pivoted QR of M', resorted
/// to original order. Discarded rows must be consistent with the kept
/// span at the feasibility tolerance, else InconsistentRedundantRow.
RowSelection remove_redundant_rows(const Matrix& M, const Vector& rhs);

/// Full two-step reduction. Loops exposing-vector discovery as a
/// numerical safety net (one round expected), removes redundant rows,
/// asserts at least one row drops whenever a certificate exists
/// (LemmaViolation otherwise), and verifies strict feasibility of the
/// reduced program, storing an interior witness.
FacialReduction facially_reduce(const StandardFormLP& lp);

/// Scatter a reduced point into original coordinates (zeros elsewhere).
Vector lift(const FacialReduction& red, const Vector& v);

/// Gather the kept coordinates of x; NotInFace if x carries mass above
/// the zero threshold on an exposed coordinate.
Vector restrict(const FacialReduction& red, const Vector& x);

/// Maximum-support dual exposing vector, or nullopt when the dual slack
/// cone is strictly feasible. Mirror construction of the primal:
///   max sum(t)  s.t.  w >= t, 0 <= t <= 1, Aw = 0, <c, w> = 0.
std::optional<DualExposingCertificate> find_dual_exposing_vector(
    const StandardFormLP& lp);

/// Builds the kept slack set and checks that the stacked matrix [A' U]
/// is row-rank deficient by exhibiting the null combination w.
DualFacialReduction dual_facially_reduce(const StandardFormLP& lp);

}  // namespace facet

#pragma once

#include <cstdint>

#include "facet/lp.hpp"

namespace facet {

/// Normalized first-order optimality residuals:
/// ( ||Ax-b||/(1+||b||), ||A'y+s-c||/(1+||c||), <x,s>/n ).
struct KktTriple {
  double primal = 0.0;
  double dual = 0.0;
  double complementarity = 0.0;
  double max() const;
};

struct IpmOptions {
  double tolerance = tol::kIpm;
  int max_iterations = 200;
  double step_fraction = 0.99;
};

struct IpmResult {
  Vector x, y, s;
  int iterations = 0;
  KktTriple kkt;
  double normal_condition = 0.0;  // kappa(A D A') at the returned iterate
  bool converged = false;
};

/// Raised when the normal-equation regularization ladder is exhausted.
/// Carries the last interior iterate for diagnosis.
class NumericalBreakdown : public Error {
 public:
  NumericalBreakdown(const std::string& what, IpmResult last)
      : Error(what), last_iterate(std::move(last)) {}
  IpmResult last_iterate;
};

/// Infeasible-start Mehrotra predictor-corrector method on the normal
/// equations A D A' dy = r, with diagonal regularization when the
/// factorization fails. A converged run returns the final iterate; a
/// run that hits the iteration cap returns the best iterate seen, with
/// `converged` false.
IpmResult solve_ipm(const StandardFormLP& lp, const IpmOptions& opts = {});

enum class PivotRule { Bland, Dantzig };
enum class SimplexVariant { Primal, Dual };
enum class SimplexStatus { Optimal, Unbounded, Infeasible, IterationLimit };

struct SimplexOptions {
  PivotRule rule = PivotRule::Bland;
  SimplexVariant variant = SimplexVariant::Primal;
  /// 0 means the default cap of 10000 * n pivots.
  long iteration_cap = 0;
  /// Assert that no basis repeats (Bland termination check); test use.
  bool track_visited_bases = false;
};

struct SimplexResult {
  Basis optimal_basis;
  Vector x;  // solution of the problem actually pivoted on
  double objective = 0.0;
  /// Pivots of the phase that optimizes the given objective. The
  /// artificial feasibility phase is reported separately below; its
  /// pivots belong to a different objective and are excluded from the
  /// degenerate-iteration ratio.
  long total_pivots = 0;
  long degenerate_pivots = 0;
  long phase1_pivots = 0;
  long phase1_degenerate = 0;
  double degiter_percent = 0.0;
  SimplexStatus status = SimplexStatus::Optimal;
};

/// Revised two-phase simplex. A pivot is counted degenerate when its
/// entering step length is at the zero threshold. The Dual variant runs
/// the primal algorithm on dual_standard_form(lp) and reports the dual
/// objective max b'y.
SimplexResult solve_simplex(const StandardFormLP& lp,
                            const SimplexOptions& opts = {});

/// Standard-form restatement of the dual max { b'y : A'y + s = c, s >= 0 }
/// with y split into positive and negative parts: columns [A' -A' I].
StandardFormLP dual_standard_form(const StandardFormLP& lp);

KktTriple kkt_residuals(const StandardFormLP& lp, const Vector& x,
                        const Vector& y, const Vector& s);

/// kappa(A Diag(x) Diag(s)^-1 A') by symmetric eigenvalue extremes;
/// +infinity when the smallest eigenvalue is numerically nonpositive.
/// Throws NonPositiveInterior unless x > 0 and s > 0.
double normal_matrix_condition(const Matrix& A, const Vector& x,
                               const Vector& s);

}  // namespace facet

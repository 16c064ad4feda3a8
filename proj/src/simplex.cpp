#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <set>

#include "facet/solvers.hpp"

namespace facet {

namespace {

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

// Revised two-phase simplex over W = [A | I]. The basis matrix is
// refactorized after every pivot; at desk scale the O(m^3) cost is
// cheap and it keeps every pricing and ratio decision exact.
struct Core {
  Matrix W;
  Vector b;
  Vector cost;              // active phase costs over all W columns
  std::vector<int> basis;   // row -> column of W
  std::vector<char> in_basis;
  Eigen::PartialPivLU<Matrix> lu;
  Vector xb;
  int m = 0;
  int n = 0;  // structural (non-artificial) column count

  long total_pivots = 0;
  long degenerate_pivots = 0;
  long cap = 0;
  PivotRule rule = PivotRule::Bland;
  bool debug_checks = false;
  std::set<std::vector<int>> visited;
  std::vector<double>* objective_trace = nullptr;

  void factor() {
    Matrix B(m, m);
    for (int i = 0; i < m; ++i) B.col(i) = W.col(basis[i]);
    lu.compute(B);
    xb = lu.solve(b);
    if (!xb.allFinite()) {
      throw InternalError("working basis became singular");
    }
  }

  void pivot(int leave_row, int enter_col) {
    in_basis[basis[leave_row]] = 0;
    in_basis[enter_col] = 1;
    basis[leave_row] = enter_col;
    ++total_pivots;
    factor();
  }

  int price() const {
    Vector cb(m);
    for (int i = 0; i < m; ++i) cb(i) = cost(basis[i]);
    const Vector y = lu.transpose().solve(cb);
    const double tau = tol::zero(cost.cwiseAbs().maxCoeff());

    int entering = -1;
    double best = -tau;
    for (int j = 0; j < n; ++j) {
      if (in_basis[j]) continue;
      const double rc = cost(j) - y.dot(W.col(j));
      if (rc < -tau) {
        if (rule == PivotRule::Bland) return j;
        if (rc < best) {
          best = rc;
          entering = j;
        }
      }
    }
    return entering;
  }

  // Minimum-ratio row; ties broken toward the smallest basic variable
  // index (Bland's leaving rule, applied under both pricing rules so
  // runs are deterministic). Returns -1 when the direction is unbounded.
  int ratio_test(const Vector& u, double& theta) const {
    const double tau_piv = 1e-9 * (1.0 + u.cwiseAbs().maxCoeff());
    int leave = -1;
    theta = 0.0;
    for (int i = 0; i < m; ++i) {
      if (u(i) <= tau_piv) continue;
      const double r = xb(i) / u(i);
      if (leave == -1) {
        leave = i;
        theta = r;
        continue;
      }
      const double tie = 1e-12 * (1.0 + std::abs(theta));
      if (r < theta - tie) {
        leave = i;
        theta = r;
      } else if (r <= theta + tie && basis[i] < basis[leave]) {
        leave = i;
      }
    }
    if (leave != -1) theta = std::max(theta, 0.0);
    return leave;
  }

  PhaseOutcome run_phase() {
    for (;;) {
      if (total_pivots >= cap) return PhaseOutcome::IterationLimit;
      const int q = price();
      if (q == -1) return PhaseOutcome::Optimal;
      const Vector u = lu.solve(W.col(q));
      double theta = 0.0;
      const int leave = ratio_test(u, theta);
      if (leave == -1) return PhaseOutcome::Unbounded;
      if (theta <= tol::zero(xb.cwiseAbs().maxCoeff())) ++degenerate_pivots;
      pivot(leave, q);

      if (debug_checks) {
        std::vector<int> key = basis;
        std::sort(key.begin(), key.end());
        if (!visited.insert(key).second) {
          throw InternalError("simplex revisited a basis");
        }
      }
      if (objective_trace) {
        Vector cb(m);
        for (int i = 0; i < m; ++i) cb(i) = cost(basis[i]);
        objective_trace->push_back(cb.dot(xb));
      }
    }
  }
};

SimplexResult run_primal(const StandardFormLP& lp, const SimplexOptions& opts,
                         std::vector<double>* trace) {
  const int m = static_cast<int>(lp.rows());
  const int n = static_cast<int>(lp.cols());

  Core core;
  core.m = m;
  core.n = n;
  core.rule = opts.rule;
  core.debug_checks = opts.track_visited_bases;
  core.cap = opts.iteration_cap > 0 ? opts.iteration_cap : 10000L * n;

  core.W.resize(m, n + m);
  core.W.leftCols(n) = lp.A;
  core.W.rightCols(m) = Matrix::Identity(m, m);
  core.b = lp.b;
  for (int i = 0; i < m; ++i) {
    if (core.b(i) < 0.0) {
      core.b(i) = -core.b(i);
      core.W.row(i) = -core.W.row(i);
      core.W(i, n + i) = 1.0;  // keep the artificial column positive
    }
  }

  core.basis.resize(m);
  core.in_basis.assign(n + m, 0);
  for (int i = 0; i < m; ++i) {
    core.basis[i] = n + i;
    core.in_basis[n + i] = 1;
  }
  core.factor();

  SimplexResult result;
  // Pivot accounting covers the phase that optimizes the given
  // objective; the feasibility bootstrap is reported separately.
  auto finish = [&](SimplexStatus status) {
    result.status = status;
    result.total_pivots = core.total_pivots - result.phase1_pivots;
    result.degenerate_pivots =
        core.degenerate_pivots - result.phase1_degenerate;
    result.degiter_percent =
        100.0 * static_cast<double>(result.degenerate_pivots) /
        static_cast<double>(std::max(1L, result.total_pivots));
    return result;
  };

  // Phase I: minimize the artificial mass.
  core.cost = Vector::Zero(n + m);
  core.cost.tail(m).setOnes();
  PhaseOutcome out = core.run_phase();
  result.phase1_pivots = core.total_pivots;
  result.phase1_degenerate = core.degenerate_pivots;
  if (out == PhaseOutcome::IterationLimit) {
    return finish(SimplexStatus::IterationLimit);
  }

  double artificial_mass = 0.0;
  for (int i = 0; i < m; ++i) {
    if (core.basis[i] >= n) artificial_mass += core.xb(i);
  }
  if (artificial_mass > tol::kFeas * (1.0 + core.b.norm())) {
    return finish(SimplexStatus::Infeasible);
  }

  // Drive leftover artificials out of the basis at zero level on the
  // largest available structural pivot. A row that offers no usable
  // pivot keeps its artificial; it stays pinned at zero and the final
  // contamination check guards the solution.
  for (int i = 0; i < m; ++i) {
    if (core.basis[i] < n) continue;
    Vector ei = Vector::Zero(m);
    ei(i) = 1.0;
    const Vector row_mult = core.lu.transpose().solve(ei);
    int enter = -1;
    double best_abs = 0.0;
    for (int j = 0; j < n; ++j) {
      if (core.in_basis[j]) continue;
      const double piv = row_mult.dot(core.W.col(j));
      if (std::abs(piv) > best_abs) {
        best_abs = std::abs(piv);
        enter = j;
      }
    }
    if (enter == -1 || best_abs <= 1e-9) continue;
    ++core.degenerate_pivots;
    core.pivot(i, enter);
  }
  result.phase1_pivots = core.total_pivots;  // includes artificial removal
  result.phase1_degenerate = core.degenerate_pivots;

  // Phase II on the real costs.
  core.cost = Vector::Zero(n + m);
  core.cost.head(n) = lp.c;
  core.visited.clear();
  core.objective_trace = trace;
  out = core.run_phase();
  if (out == PhaseOutcome::IterationLimit) return finish(SimplexStatus::IterationLimit);
  if (out == PhaseOutcome::Unbounded) return finish(SimplexStatus::Unbounded);

  result.x = Vector::Zero(n);
  double artificial_growth = 0.0;
  for (int i = 0; i < m; ++i) {
    if (core.basis[i] < n) {
      result.x(core.basis[i]) = core.xb(i);
    } else {
      artificial_growth += std::abs(core.xb(i));
    }
  }
  if (artificial_growth > tol::kFeas * (1.0 + core.b.norm())) {
    throw InternalError("a zero-level artificial grew during optimization");
  }
  result.objective = lp.c.dot(result.x);
  result.optimal_basis.indices = core.basis;
  std::sort(result.optimal_basis.indices.begin(),
            result.optimal_basis.indices.end());
  return finish(SimplexStatus::Optimal);
}

}  // namespace

StandardFormLP dual_standard_form(const StandardFormLP& lp) {
  const Eigen::Index m = lp.rows();
  const Eigen::Index n = lp.cols();
  StandardFormLP dual;
  dual.A.resize(n, 2 * m + n);
  dual.A.leftCols(m) = lp.A.transpose();
  dual.A.middleCols(m, m) = -lp.A.transpose();
  dual.A.rightCols(n) = Matrix::Identity(n, n);
  dual.b = lp.c;
  dual.c = Vector::Zero(2 * m + n);
  dual.c.head(m) = -lp.b;
  dual.c.segment(m, m) = lp.b;
  return dual;
}

SimplexResult solve_simplex(const StandardFormLP& lp,
                            const SimplexOptions& opts) {
  StandardFormLP checked;
  const StandardFormLP& v =
      lp.full_row_rank_checked ? lp : (checked = validate(lp), checked);

  if (opts.variant == SimplexVariant::Dual) {
    const StandardFormLP dual = validate(dual_standard_form(v));
    SimplexOptions inner = opts;
    inner.variant = SimplexVariant::Primal;
    SimplexResult r = run_primal(dual, inner, nullptr);
    r.objective = -r.objective;  // report max b'y
    return r;
  }
  return run_primal(v, opts, nullptr);
}

namespace detail {

// Test hook: primal simplex with a per-pivot objective trace.
SimplexResult solve_simplex_traced(const StandardFormLP& lp,
                                   const SimplexOptions& opts,
                                   std::vector<double>& trace) {
  StandardFormLP checked;
  const StandardFormLP& v =
      lp.full_row_rank_checked ? lp : (checked = validate(lp), checked);
  return run_primal(v, opts, &trace);
}

}  // namespace detail

}  // namespace facet

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "facet/solvers.hpp"

namespace facet {

namespace {

constexpr double kDivergenceCap = 1e32;

// Cholesky with the escalating diagonal regularization delta * I,
// delta = 1e-12, 1e-11, ... Throws NumericalBreakdown past 1e16.
class RegularizedCholesky {
 public:
  void compute(const Matrix& M, const IpmResult& snapshot) {
    double delta = 0.0;
    for (;;) {
      if (delta == 0.0) {
        llt_.compute(M);
      } else {
        Matrix shifted = M;
        shifted.diagonal().array() += delta;
        llt_.compute(shifted);
      }
      if (llt_.info() == Eigen::Success) return;
      delta = (delta == 0.0) ? 1e-12 : delta * 10.0;
      if (delta > 1e16) {
        throw NumericalBreakdown("normal equation regularization exhausted",
                                 snapshot);
      }
    }
  }
  Vector solve(const Vector& rhs) const { return llt_.solve(rhs); }

 private:
  Eigen::LLT<Matrix> llt_;
};

// Largest step alpha in [0, 1] keeping v + alpha * dv >= (1 - fraction) v.
double step_to_boundary(const Vector& v, const Vector& dv, double fraction) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -fraction * v(i) / dv(i));
  }
  return alpha;
}

// Plain ratio (no damping), used to probe the affine step.
double full_step_to_boundary(const Vector& v, const Vector& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

IpmResult snapshot(const Vector& x, const Vector& y, const Vector& s,
                   int iterations, const KktTriple& kkt) {
  IpmResult r;
  r.x = x;
  r.y = y;
  r.s = s;
  r.iterations = iterations;
  r.kkt = kkt;
  r.converged = false;
  return r;
}

}  // namespace

double KktTriple::max() const {
  return std::max({primal, dual, complementarity});
}

KktTriple kkt_residuals(const StandardFormLP& lp, const Vector& x,
                        const Vector& y, const Vector& s) {
  if (x.size() != lp.cols() || s.size() != lp.cols() || y.size() != lp.rows()) {
    throw DimensionMismatch("kkt_residuals: dimension mismatch");
  }
  KktTriple k;
  k.primal = (lp.A * x - lp.b).norm() / (1.0 + lp.b.norm());
  k.dual = (lp.A.transpose() * y + s - lp.c).norm() / (1.0 + lp.c.norm());
  k.complementarity = x.dot(s) / static_cast<double>(lp.cols());
  return k;
}

double normal_matrix_condition(const Matrix& A, const Vector& x,
                               const Vector& s) {
  if (x.size() != A.cols() || s.size() != A.cols()) {
    throw DimensionMismatch("normal_matrix_condition: dimension mismatch");
  }
  if (x.size() == 0 || x.minCoeff() <= 0.0 || s.minCoeff() <= 0.0) {
    throw NonPositiveInterior("x and s must be strictly positive");
  }
  const Vector d = x.array() / s.array();
  const Matrix M = A * d.asDiagonal() * A.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(M, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

IpmResult solve_ipm(const StandardFormLP& lp, const IpmOptions& opts) {
  StandardFormLP checked;
  const StandardFormLP& v =
      lp.full_row_rank_checked ? lp : (checked = validate(lp), checked);

  const Eigen::Index m = v.rows();
  const Eigen::Index n = v.cols();
  const double nd = static_cast<double>(n);

  // Least-squares starting point, shifted into the positive orthant.
  Vector x, y, s;
  {
    Matrix AAt = v.A * v.A.transpose();
    RegularizedCholesky llt;
    llt.compute(AAt, snapshot(Vector::Ones(n), Vector::Zero(m),
                              Vector::Ones(n), 0, {}));
    x = v.A.transpose() * llt.solve(v.b);
    y = llt.solve(v.A * v.c);
    s = v.c - v.A.transpose() * y;

    const double dx = std::max(-1.5 * x.minCoeff(), 0.0);
    const double ds = std::max(-1.5 * s.minCoeff(), 0.0);
    x.array() += dx;
    s.array() += ds;
    const double xs = x.dot(s);
    const double sum_s = s.sum();
    const double sum_x = x.sum();
    x.array() += (sum_s > 0.0) ? 0.5 * xs / sum_s : 1.0;
    s.array() += (sum_x > 0.0) ? 0.5 * xs / sum_x : 1.0;
    if (!(x.minCoeff() > 0.0)) x.array() += 1.0 - x.minCoeff();
    if (!(s.minCoeff() > 0.0)) s.array() += 1.0 - s.minCoeff();
  }

  KktTriple kkt = kkt_residuals(v, x, y, s);
  int iter = 0;
  bool converged = kkt.max() <= opts.tolerance;

  // Best iterate seen, returned when the run does not converge (an
  // infeasible or unbounded program leaves the last iterate erratic).
  Vector best_x = x, best_y = y, best_s = s;
  KktTriple best_kkt = kkt;

  while (!converged && iter < opts.max_iterations) {
    const Vector rp = v.b - v.A * x;
    const Vector rd = v.c - v.A.transpose() * y - s;
    const double mu = x.dot(s) / nd;

    const Vector d = x.array() / s.array();
    const Matrix AD = v.A * d.asDiagonal();
    const Matrix M = AD * v.A.transpose();
    RegularizedCholesky llt;
    llt.compute(M, snapshot(x, y, s, iter, kkt));

    // Predictor: pure Newton step toward complementarity zero.
    const Vector rhs_aff = v.b + AD * rd;
    const Vector dy_aff = llt.solve(rhs_aff);
    const Vector ds_aff = rd - v.A.transpose() * dy_aff;
    const Vector dx_aff = -x.array() - d.array() * ds_aff.array();

    const double ap_aff = full_step_to_boundary(x, dx_aff);
    const double ad_aff = full_step_to_boundary(s, ds_aff);
    const double mu_aff =
        (x + ap_aff * dx_aff).dot(s + ad_aff * ds_aff) / nd;
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector with centering.
    const Vector rc = (sigma * mu - (x.array() * s.array()) -
                       (dx_aff.array() * ds_aff.array()))
                          .matrix();
    const Vector sinv_rc = rc.array() / s.array();
    const Vector rhs = rp - v.A * sinv_rc + AD * rd;
    const Vector dy = llt.solve(rhs);
    const Vector ds = rd - v.A.transpose() * dy;
    const Vector dx = sinv_rc.array() - d.array() * ds.array();

    const double ap = step_to_boundary(x, dx, opts.step_fraction);
    const double ad = step_to_boundary(s, ds, opts.step_fraction);
    x += ap * dx;
    y += ad * dy;
    s += ad * ds;
    ++iter;

    kkt = kkt_residuals(v, x, y, s);
    converged = kkt.max() <= opts.tolerance;
    if (kkt.max() < best_kkt.max()) {
      best_x = x;
      best_y = y;
      best_s = s;
      best_kkt = kkt;
    }
    if (x.cwiseAbs().maxCoeff() > kDivergenceCap ||
        s.cwiseAbs().maxCoeff() > kDivergenceCap) {
      break;  // infeasible or unbounded run
    }
  }

  IpmResult result;
  if (converged) {
    result.x = std::move(x);
    result.y = std::move(y);
    result.s = std::move(s);
    result.kkt = kkt;
  } else {
    result.x = std::move(best_x);
    result.y = std::move(best_y);
    result.s = std::move(best_s);
    result.kkt = best_kkt;
  }
  result.iterations = iter;
  result.converged = converged;
  result.normal_condition = normal_matrix_condition(v.A, result.x, result.s);
  return result;
}

}  // namespace facet

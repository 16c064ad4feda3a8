#include "facet/generators.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "facet/rng.hpp"

namespace facet {

namespace {

constexpr int kMaxRedraws = 10;

// Stream tags, one per construction step.
enum : std::uint64_t {
  kTagY = 1,
  kTagMix = 2,
  kTagVhat = 3,
  kTagA2 = 4,
  kTagPerm = 5,
  kTagObjective = 6,
  kTagX0 = 7,
  kTagW = 8,
  kTagRows = 9,
  kTagSlack = 10,
  kTagDualY = 11,
  kTagXhat = 12,
  kTagSupport = 13,
};

// Orthonormal basis of {v}^perp via a full Householder QR of v.
Matrix orthogonal_complement(const Vector& v) {
  Eigen::HouseholderQR<Matrix> qr(v);
  const Matrix Q = qr.householderQ() * Matrix::Identity(v.size(), v.size());
  return Q.rightCols(v.size() - 1);
}

Eigen::Index numerical_rank(const Matrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(M);
  qr.setThreshold(tol::rank_rel(M.rows(), M.cols()));
  return qr.rank();
}

void check(bool ok, const char* what) {
  if (!ok) throw InternalError(std::string("generator self-check failed: ") + what);
}

}  // namespace

ObjectivePlant make_objective(const StandardFormLP& lp, std::uint64_t seed) {
  RngStream ybar_stream(derive_seed(seed, kTagObjective));
  RngStream sbar_stream(derive_seed(seed, kTagObjective + 100));
  ObjectivePlant plant;
  plant.y_bar = ybar_stream.normal_vector(lp.rows());
  plant.s_bar = sbar_stream.uniform_vector(lp.cols(), 0.1, 1.1);
  plant.c = lp.A.transpose() * plant.y_bar + plant.s_bar;
  return plant;
}

PlantedInstance generate_primal_no_slater(const GeneratorSpec& spec) {
  const int m = spec.m;
  const int n = spec.n;
  const int r = spec.r;
  if (m < 2 || n <= m || r < 1 || r > n) {
    throw DimensionMismatch("need m >= 2, n > m and 1 <= r <= n");
  }

  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t base = derive_seed(spec.seed, attempt);

    RngStream y_stream(derive_seed(base, kTagY));
    const Vector y = y_stream.normal_vector(m);
    if (y.norm() < 1e-6) continue;

    const Matrix null_basis = orthogonal_complement(y);  // m x (m-1)
    RngStream mix_stream(derive_seed(base, kTagMix));
    const Matrix R = mix_stream.normal_matrix(m - 1, r);
    const Matrix A1 = null_basis * R;  // m x r, A1'y = 0
    if (numerical_rank(A1) < std::min(m - 1, r)) continue;

    RngStream vhat_stream(derive_seed(base, kTagVhat));
    const Vector v_hat = vhat_stream.uniform_vector(r, 0.5, 1.5);
    const Vector b = A1 * v_hat;

    // Columns of A2 must have a solidly nonzero inner product with y;
    // near-orthogonal draws are redrawn column by column.
    RngStream a2_stream(derive_seed(base, kTagA2));
    Matrix A2(m, n - r);
    bool a2_ok = true;
    for (Eigen::Index j = 0; j < A2.cols() && a2_ok; ++j) {
      a2_ok = false;
      for (int tries = 0; tries < 50; ++tries) {
        const Vector col = a2_stream.normal_vector(m);
        const double d = y.dot(col);
        if (std::abs(d) >= 1e-4 * y.norm() * col.norm()) {
          A2.col(j) = d < 0.0 ? Vector(-col) : col;
          a2_ok = true;
          break;
        }
      }
    }
    if (!a2_ok) continue;

    Matrix A_unpermuted(m, n);
    A_unpermuted.leftCols(r) = A1;
    A_unpermuted.rightCols(n - r) = A2;
    if (n - r > 0 && numerical_rank(A_unpermuted) < m) continue;

    RngStream perm_stream(derive_seed(base, kTagPerm));
    const std::vector<int> perm = perm_stream.permutation(n);

    PlantedInstance inst;
    inst.spec = spec;
    inst.column_permutation = perm;
    inst.lp.A.resize(m, n);
    inst.planted_feasible_point = Vector::Zero(n);
    IndexSet support;
    for (int j = 0; j < n; ++j) {
      const int original = perm[j];
      inst.lp.A.col(j) = A_unpermuted.col(original);
      if (original < r) {
        inst.planted_feasible_point(j) = v_hat(original);
      } else {
        support.push_back(j);
      }
    }
    std::sort(support.begin(), support.end());
    inst.lp.b = b;

    const ObjectivePlant obj = make_objective(inst.lp, derive_seed(base, 17));
    inst.lp.c = obj.c;
    inst.objective_plant = PlantedObjective{obj.y_bar, obj.s_bar};

    if (n > r) {
      inst.planted_primal_certificate = PlantedPrimalCertificate{y, support};
    }

    // Construction identities.
    const double yn = y.norm();
    check((A1.transpose() * y).cwiseAbs().maxCoeff() <=
              tol::kCert * (1.0 + A1.norm()) * yn,
          "A1'y = 0");
    check(std::abs(b.dot(y)) <= tol::kCert * (1.0 + b.norm()) * yn, "b'y = 0");
    const Vector z = inst.lp.A.transpose() * y;
    for (int j : support) check(z(j) > 0.0, "A2'y > 0");
    check(satisfies_equalities(inst.lp, inst.planted_feasible_point),
          "A x_hat = b");
    check((inst.planted_feasible_point.array() > 0.0).count() == r,
          "x_hat has r positives");
    return inst;
  }
  throw DegenerateDraw("primal generator exhausted redraw attempts");
}

PlantedInstance to_slater_counterpart(const PlantedInstance& inst,
                                      std::uint64_t seed,
                                      const std::optional<Vector>& x0) {
  PlantedInstance out;
  out.lp = inst.lp;
  out.spec = inst.spec;
  out.spec.kind = InstanceKind::PrimalSlater;
  out.spec.seed = seed;
  out.column_permutation = inst.column_permutation;
  out.objective_plant = inst.objective_plant;

  Vector interior;
  if (x0) {
    if (x0->size() != inst.lp.cols()) {
      throw DimensionMismatch("interior point length mismatch");
    }
    if (!(x0->minCoeff() > 0.0)) {
      throw DimensionMismatch("interior point must be strictly positive");
    }
    interior = *x0;
  } else {
    RngStream stream(derive_seed(seed, kTagX0));
    interior = stream.uniform_vector(inst.lp.cols(), 0.5, 1.5);
  }
  out.lp.b = out.lp.A * interior;
  out.planted_feasible_point = interior;
  check(is_strictly_feasible_point(out.lp, interior), "x0 strictly feasible");
  return out;
}

PlantedInstance generate_dual_no_slater(const GeneratorSpec& spec) {
  const int m = spec.m;
  const int n = spec.n;
  const int r = spec.r;
  const int support_size = n - r;
  if (m < 1 || n <= m || r < 1 || r > n) {
    throw DimensionMismatch("need m >= 1, n > m and 1 <= r <= n");
  }

  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t base = derive_seed(spec.seed, 0x0D00 + attempt);

    PlantedInstance inst;
    inst.spec = spec;

    Vector w = Vector::Zero(n);
    IndexSet support;
    if (support_size > 0) {
      RngStream support_stream(derive_seed(base, kTagSupport));
      std::vector<int> order = support_stream.permutation(n);
      support.assign(order.begin(), order.begin() + support_size);
      std::sort(support.begin(), support.end());
      RngStream w_stream(derive_seed(base, kTagW));
      for (int i : support) w(i) = w_stream.uniform(0.5, 1.5);
    }

    RngStream row_stream(derive_seed(base, kTagRows));
    Matrix A(m, n);
    if (support_size > 0) {
      const Matrix null_basis = orthogonal_complement(w);  // n x (n-1)
      const Matrix G = row_stream.normal_matrix(n - 1, m);
      A = (null_basis * G).transpose();  // rows span {w}^perp
    } else {
      A = row_stream.normal_matrix(m, n);  // strictly feasible family
    }
    if (numerical_rank(A) < m) continue;

    RngStream slack_stream(derive_seed(base, kTagSlack));
    Vector s = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (w(i) == 0.0) s(i) = slack_stream.uniform(0.5, 1.5);
    }

    RngStream y_stream(derive_seed(base, kTagDualY));
    const Vector y = y_stream.normal_vector(m);
    const Vector c = A.transpose() * y + s;

    RngStream xhat_stream(derive_seed(base, kTagXhat));
    const Vector x_hat = xhat_stream.uniform_vector(n, 0.5, 1.5);

    inst.lp.A = A;
    inst.lp.b = A * x_hat;
    inst.lp.c = c;
    inst.planted_feasible_point = x_hat;
    if (support_size > 0) inst.planted_dual_certificate = w;

    if (support_size > 0) {
      const double wn = w.norm();
      check((A * w).cwiseAbs().maxCoeff() <= tol::kCert * (1.0 + A.norm()) * wn,
            "Aw = 0");
      check(std::abs(c.dot(w)) <= tol::kCert * (1.0 + c.norm()) * wn,
            "c'w = 0");
      check(std::abs(s.dot(w)) == 0.0, "<s, w> = 0");
    }
    return inst;
  }
  throw DegenerateDraw("dual generator exhausted redraw attempts");
}

PlantedInstance generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case InstanceKind::PrimalNoSlater:
      return generate_primal_no_slater(spec);
    case InstanceKind::PrimalSlater: {
      GeneratorSpec base = spec;
      base.kind = InstanceKind::PrimalNoSlater;
      return to_slater_counterpart(generate_primal_no_slater(base),
                                   derive_seed(spec.seed, kTagX0));
    }
    case InstanceKind::DualNoSlater:
      return generate_dual_no_slater(spec);
  }
  throw DimensionMismatch("unknown generator kind");
}

}  // namespace facet

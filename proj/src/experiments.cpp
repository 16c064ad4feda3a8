#include "facet/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "facet/generators.hpp"
#include "facet/rng.hpp"

namespace facet {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append(std::string& line, const std::optional<double>& v) {
  line.push_back(',');
  if (v) line += format_double(*v);
}

void append(std::string& line, const std::optional<int>& v) {
  line.push_back(',');
  if (v) line += std::to_string(*v);
}

void append(std::string& line, const std::optional<bool>& v) {
  line.push_back(',');
  if (v) line += *v ? "1" : "0";
}

// Runs the interior-point method and records the outcome; solver
// failures become a status, never a dropped row.
void record_ipm(ReportRow& row, const StandardFormLP& lp) {
  const auto start = Clock::now();
  try {
    IpmResult res = solve_ipm(lp);
    row.status = res.converged ? "ok" : "not_converged";
    row.kappa = res.normal_condition;
    row.kkt_primal = res.kkt.primal;
    row.kkt_dual = res.kkt.dual;
    row.kkt_gap = res.kkt.complementarity;
    row.iterations = res.iterations;
  } catch (const NumericalBreakdown& e) {
    row.status = "numerical_breakdown";
    row.kkt_primal = e.last_iterate.kkt.primal;
    row.kkt_dual = e.last_iterate.kkt.dual;
    row.kkt_gap = e.last_iterate.kkt.complementarity;
    row.iterations = e.last_iterate.iterations;
  } catch (const Error& e) {
    row.status = std::string("error:") + e.what();
  }
  row.wall_ms = elapsed_ms(start);
}

std::vector<double> default_epsilons() {
  // 11-point log grid over 1e-6 .. 1e-1.
  std::vector<double> eps;
  for (int k = 0; k <= 10; ++k) eps.push_back(std::pow(10.0, -6.0 + 0.5 * k));
  return eps;
}

}  // namespace

bool ReportRow::passed() const {
  for (const auto& flag : {all_degenerate_ok, max_positive_ok, degree_bound_ok,
                           recovery_ok, witness_ok}) {
    if (flag && !*flag) return false;
  }
  return status == "ok";
}

Vector reduce_objective(const FacialReduction& red, const Vector& c) {
  Vector out(red.kept_columns.size());
  for (std::size_t k = 0; k < red.kept_columns.size(); ++k) {
    out(k) = c(red.kept_columns[k]);
  }
  return out;
}

double spearman_correlation(const std::vector<double>& a,
                            const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw DimensionMismatch("spearman: need two equal-length samples");
  }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<int> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return v[i] < v[j]; });
    std::vector<double> rank(v.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    return rank;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double mean = (static_cast<double>(a.size()) - 1.0) / 2.0;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  return cov / std::sqrt(va * vb);
}

std::vector<ReportRow> run_condition_experiment(const ExperimentConfig& cfg) {
  std::vector<ReportRow> rows;
  for (int k = 0; k < cfg.seeds; ++k) {
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(k);
    RngStream r_stream(derive_seed(seed, 0xC0));
    const int r = cfg.r_range.first +
                  static_cast<int>(r_stream.below(static_cast<std::uint64_t>(
                      cfg.r_range.second - cfg.r_range.first + 1)));

    GeneratorSpec spec{cfg.m, cfg.n, r, seed, InstanceKind::PrimalNoSlater};
    ReportRow base;
    base.protocol = "condition";
    base.m = cfg.m;
    base.n = cfg.n;
    base.r = r;
    base.seed = seed;

    PlantedInstance inst;
    try {
      inst = generate_primal_no_slater(spec);
    } catch (const Error& e) {
      ReportRow row = base;
      row.family = "no_slater";
      row.status = std::string("error:") + e.what();
      rows.push_back(row);
      continue;
    }

    {
      ReportRow row = base;
      row.family = "no_slater";
      record_ipm(row, inst.lp);
      rows.push_back(row);
    }
    {
      ReportRow row = base;
      row.family = "slater";
      try {
        const PlantedInstance counterpart =
            to_slater_counterpart(inst, derive_seed(seed, 0xC1));
        record_ipm(row, counterpart.lp);
      } catch (const Error& e) {
        row.status = std::string("error:") + e.what();
      }
      rows.push_back(row);
    }
    {
      ReportRow row = base;
      row.family = "fr";
      try {
        const FacialReduction red = facially_reduce(inst.lp);
        StandardFormLP reduced;
        reduced.A = red.A_reduced;
        reduced.b = red.b_reduced;
        reduced.c = reduce_objective(red, inst.lp.c);
        reduced.full_row_rank_checked = true;
        row.support_size = red.certificate
                               ? static_cast<int>(red.certificate->support.size())
                               : 0;
        record_ipm(row, reduced);
      } catch (const Error& e) {
        row.status = std::string("error:") + e.what();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ReportRow> run_perturbation_experiment(
    const StandardFormLP& lp, const FacialReduction& red,
    const ExperimentConfig& cfg) {
  if (!red.certificate) {
    throw DimensionMismatch(
        "perturbation protocol needs a program without strict feasibility");
  }
  const std::vector<double> eps_grid =
      cfg.epsilons.empty() ? default_epsilons() : cfg.epsilons;

  const Vector delta_b = red.certificate->y;  // range(AV)-orthogonal direction

  // Range-space direction A V d with d random.
  const Matrix AV = [&] {
    Matrix M(lp.rows(), red.kept_columns.size());
    for (std::size_t k = 0; k < red.kept_columns.size(); ++k) {
      M.col(k) = lp.A.col(red.kept_columns[k]);
    }
    return M;
  }();
  RngStream d_stream(derive_seed(cfg.base_seed, 0xD0));
  const Vector d = d_stream.normal_vector(AV.cols());
  const Vector delta_b_range = AV * d;

  std::vector<ReportRow> rows;
  for (double eps : eps_grid) {
    for (int dir = 0; dir < 2; ++dir) {
      const bool certificate_dir = dir == 0;
      const Vector& delta = certificate_dir ? delta_b : delta_b_range;
      ReportRow row;
      row.protocol = "perturbation";
      row.m = static_cast<int>(lp.rows());
      row.n = static_cast<int>(lp.cols());
      row.r = static_cast<int>(red.kept_columns.size());
      row.seed = cfg.base_seed;
      row.family = certificate_dir ? "certificate" : "range";
      row.epsilon = eps;
      row.perturbation_norm = eps * delta.norm();

      StandardFormLP perturbed = lp;
      perturbed.b = lp.b - eps * delta;
      perturbed.full_row_rank_checked = lp.full_row_rank_checked;
      record_ipm(row, perturbed);
      if (certificate_dir) {
        // Explicit infeasibility certificate for the perturbed system:
        // A'y >= 0 and <b_eps, y> < 0.
        const Vector& y = red.certificate->y;
        const double zmin = (lp.A.transpose() * y).minCoeff();
        const double inner = perturbed.b.dot(y);
        row.farkas_ok =
            zmin >= -red.certificate->tolerance_used && inner < 0.0;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ReportRow> run_degeneracy_experiment(const ExperimentConfig& cfg) {
  std::vector<int> grid = cfg.r_grid;
  if (grid.empty()) {
    for (double frac : {0.6, 0.7, 0.8, 0.9, 1.0}) {
      grid.push_back(static_cast<int>(std::lround(frac * cfg.n)));
    }
  }

  std::vector<ReportRow> rows;
  for (int r : grid) {
    double sum = 0.0;
    int counted = 0;
    for (int k = 0; k < cfg.seeds; ++k) {
      const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(k);
      ReportRow row;
      row.protocol = "degiter";
      row.m = cfg.m;
      row.n = cfg.n;
      row.r = r;
      row.seed = seed;
      row.family = "raw";
      const auto start = Clock::now();
      try {
        GeneratorSpec spec{cfg.m, cfg.n, r, seed, InstanceKind::DualNoSlater};
        const PlantedInstance inst = generate_dual_no_slater(spec);
        SimplexOptions opts;
        opts.rule = PivotRule::Dantzig;
        opts.variant = SimplexVariant::Dual;
        const SimplexResult res = solve_simplex(inst.lp, opts);
        switch (res.status) {
          case SimplexStatus::Optimal:
            row.status = "ok";
            break;
          case SimplexStatus::IterationLimit:
            row.status = "iteration_limit";
            break;
          case SimplexStatus::Unbounded:
            row.status = "unbounded";
            break;
          case SimplexStatus::Infeasible:
            row.status = "infeasible";
            break;
        }
        row.iterations = static_cast<int>(res.total_pivots);
        row.degiter_percent = res.degiter_percent;
        sum += res.degiter_percent;
        ++counted;
      } catch (const Error& e) {
        row.status = std::string("error:") + e.what();
      }
      row.wall_ms = elapsed_ms(start);
      rows.push_back(std::move(row));
    }
    ReportRow avg;
    avg.protocol = "degiter";
    avg.m = cfg.m;
    avg.n = cfg.n;
    avg.r = r;
    avg.seed = 0;
    avg.family = "cell_average";
    avg.status = counted == cfg.seeds ? "ok" : "partial";
    if (counted > 0) avg.degiter_percent = sum / counted;
    rows.push_back(std::move(avg));
  }
  return rows;
}

ReportRow verify_theorem_instance(const StandardFormLP& lp,
                                  const std::optional<IndexSet>& planted) {
  ReportRow row;
  row.protocol = "theorems";
  row.m = static_cast<int>(lp.rows());
  row.n = static_cast<int>(lp.cols());

  try {
    const StandardFormLP v = lp.full_row_rank_checked ? lp : validate(lp);
    const FacialReduction red = facially_reduce(v);
    const BfsEnumeration enumeration = enumerate_bfs(v);
    const int m = static_cast<int>(v.rows());

    if (red.certificate) {
      row.branch = "certificate";
      row.all_degenerate_ok = enumeration.all_degenerate;

      bool max_ok = true;  // extreme points: at most m - 1 positives
      for (const Vector& p : enumeration.distinct_points) {
        const double tau = tol::zero(p.cwiseAbs().maxCoeff());
        if ((p.array() > tau).count() > m - 1) max_ok = false;
      }
      row.max_positive_ok = max_ok;

      const int bound = m - static_cast<int>(red.kept_rows.size());
      bool degree_ok = true;
      for (const BasisPoint& e : enumeration.entries) {
        if (e.degeneracy_degree < bound) degree_ok = false;
      }
      row.degree_bound_ok = degree_ok;

      row.support_size = static_cast<int>(red.certificate->support.size());
      if (planted) row.recovery_ok = red.certificate->support == *planted;
    } else {
      if (planted) row.recovery_ok = false;  // a planted witness was missed
      bool has_nondegenerate = false;
      for (const BasisPoint& e : enumeration.entries) {
        if (e.degeneracy_degree == 0) has_nondegenerate = true;
      }
      if (has_nondegenerate) {
        row.branch = "slater";
        // Contrapositive: a strictly feasible witness must exist.
        row.witness_ok =
            red.slater_verified &&
            is_strictly_feasible_point(v, lift(red, red.slater_witness));
      } else {
        row.branch = "converse_gap";  // degenerate yet strictly feasible
        row.converse_gap = true;
      }
    }
  } catch (const Error& e) {
    row.status = std::string("error:") + e.what();
  }
  return row;
}

std::vector<ReportRow> verify_theorem_suite(const ExperimentConfig& cfg) {
  std::vector<ReportRow> rows;
  for (int k = 0; k < cfg.seeds; ++k) {
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(k);

    // Cycle through small shapes; r spans the configured range.
    RngStream shape_stream(derive_seed(seed, 0xE0));
    const int m = 2 + static_cast<int>(shape_stream.below(
                          static_cast<std::uint64_t>(std::max(1, cfg.m - 1))));
    const int n =
        std::max(m + 2, 6 + static_cast<int>(shape_stream.below(
                                static_cast<std::uint64_t>(cfg.n - 5))));
    const int r_lo = std::max(1, cfg.r_range.first);
    const int r_hi = std::min(n - 1, cfg.r_range.second);
    const int r = r_lo + static_cast<int>(shape_stream.below(
                             static_cast<std::uint64_t>(r_hi - r_lo + 1)));
    const bool slater_family = (k % 3) == 2;

    ReportRow row;
    try {
      GeneratorSpec spec{m, n, r, seed, InstanceKind::PrimalNoSlater};
      PlantedInstance inst = generate_primal_no_slater(spec);
      if (slater_family) {
        inst = to_slater_counterpart(inst, derive_seed(seed, 0xE1));
        row = verify_theorem_instance(inst.lp, std::nullopt);
      } else {
        std::optional<IndexSet> planted;
        if (inst.planted_primal_certificate) {
          planted = inst.planted_primal_certificate->support;
        }
        row = verify_theorem_instance(inst.lp, planted);
      }
    } catch (const Error& e) {
      row.status = std::string("error:") + e.what();
    }
    row.protocol = "theorems";
    row.m = m;
    row.n = n;
    row.r = r;
    row.seed = seed;
    row.family = slater_family ? "slater_counterpart" : "planted_no_slater";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_header() {
  return "protocol,m,n,r,seed,family,status,epsilon,perturbation_norm,kappa,"
         "kkt_primal,kkt_dual,kkt_gap,iterations,wall_ms,degiter_percent,"
         "support_size,farkas_ok,all_degenerate_ok,max_positive_ok,"
         "degree_bound_ok,recovery_ok,witness_ok,converse_gap,branch";
}

void write_csv(const std::vector<ReportRow>& rows, std::ostream& os) {
  os << csv_header() << '\n';
  for (const ReportRow& r : rows) {
    std::string line = r.protocol;
    line += ',' + std::to_string(r.m);
    line += ',' + std::to_string(r.n);
    line += ',' + std::to_string(r.r);
    line += ',' + std::to_string(r.seed);
    line += ',' + r.family;
    line += ',' + r.status;
    append(line, r.epsilon);
    append(line, r.perturbation_norm);
    append(line, r.kappa);
    append(line, r.kkt_primal);
    append(line, r.kkt_dual);
    append(line, r.kkt_gap);
    append(line, r.iterations);
    append(line, r.wall_ms);
    append(line, r.degiter_percent);
    append(line, r.support_size);
    append(line, r.farkas_ok);
    append(line, r.all_degenerate_ok);
    append(line, r.max_positive_ok);
    append(line, r.degree_bound_ok);
    append(line, r.recovery_ok);
    append(line, r.witness_ok);
    append(line, r.converse_gap);
    line.push_back(',');
    if (r.branch) line += *r.branch;
    os << line << '\n';
  }
}

}  // namespace facet

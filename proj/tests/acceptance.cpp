// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "facet/experiments.hpp"
#include "facet/facial_reduction.hpp"
#include "facet/generators.hpp"
#include "facet/io.hpp"
#include "facet/solvers.hpp"
#include "fixtures.hpp"

using namespace facet;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

bool contains_point(const std::vector<Vector>& set, const Vector& p,
                    double tau) {
  for (const Vector& q : set) {
    if ((q - p).cwiseAbs().maxCoeff() <= tau) return true;
  }
  return false;
}

// 1. Golden system without strict feasibility: exact enumeration and the
//    full two-step reduction, in under a second.
Check criterion_1(double& seconds_out) {
  Check c;
  const auto start = std::chrono::steady_clock::now();

  const StandardFormLP lp = validate(fixtures::no_slater_2x5());
  const BfsEnumeration e = enumerate_bfs(lp);
  c.require(e.entries.size() == 6,
            "expected 6 feasible bases, got " + std::to_string(e.entries.size()));
  c.require(e.distinct_points.size() == 2, "expected 2 distinct points");
  Vector p1(5), p2(5);
  p1 << 0, 1, 0, 0, 0;
  p2 << 0, 0, 0, 0, 0.5;
  c.require(contains_point(e.distinct_points, p1, 1e-12) &&
                contains_point(e.distinct_points, p2, 1e-12),
            "distinct points differ from (0,1,0,0,0), (0,0,0,0,1/2)");
  c.require(e.all_degenerate, "every basic feasible solution must be degenerate");

  const FacialReduction red = facially_reduce(lp);
  c.require(red.certificate.has_value() &&
                red.certificate->support == IndexSet{0, 2, 3},
            "exposing support must be {1,3,4} (1-based)");
  c.require(red.A_reduced.rows() == 1 && red.A_reduced.cols() == 2 &&
                red.kept_rows.size() == 1,
            "reduced system must be 1x2 with rank 1");
  c.require(red.slater_verified, "reduced system must verify strict feasibility");

  seconds_out = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  c.require(seconds_out < 1.0, "runtime exceeded 1 s");
  return c;
}

// 2. Golden system with a nondegenerate basic solution and an interior
//    point; no certificate exists.
Check criterion_2() {
  Check c;
  const StandardFormLP lp = validate(fixtures::one_nondegenerate_2x5());
  const BfsEnumeration e = enumerate_bfs(lp);
  c.require(e.entries.size() == 4, "expected 4 feasible bases");

  const BasisPoint p = basis_solve(lp, Basis{{0, 4}});
  Vector expected(5);
  expected << 5, 0, 0, 0, 1;
  c.require((p.x - expected).cwiseAbs().maxCoeff() <= 1e-12,
            "basis {1,5} must give (5,0,0,0,1)");
  c.require(p.degeneracy_degree == 0, "basis {1,5} must be nondegenerate");

  c.require(!find_exposing_vector(lp).has_value(),
            "no exposing certificate may exist");
  Vector interior(5);
  interior << 0.4, 0.1, 0.1, 0.4, 0.1;
  c.require(is_strictly_feasible_point(lp, interior),
            "(0.4,0.1,0.1,0.4,0.1) must pass the strict feasibility check");
  return c;
}

// 3. Golden converse-gap system: all basic solutions degenerate, yet no
//    certificate exists. Degeneracy must not be read as a certificate.
Check criterion_3() {
  Check c;
  const StandardFormLP lp = validate(fixtures::degenerate_slater_2x5());
  const BfsEnumeration e = enumerate_bfs(lp);
  c.require(e.entries.size() == 4, "expected 4 feasible bases");
  c.require(e.all_degenerate, "all basic solutions must be degenerate");
  c.require(!find_exposing_vector(lp).has_value(),
            "no certificate may exist despite full degeneracy");
  return c;
}

// 4. 500 planted instances at enumerable size: every degeneracy claim
//    holds and the exposed set is recovered exactly, in under 2 minutes.
Check criterion_4(double& seconds_out) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  std::string first_failure;

  for (int i = 0; i < 500; ++i) {
    const int m = 2 + i % 4;                    // 2..5
    const int n = 6 + (i / 4) % 7;              // 6..12
    const int r = 1 + (i * 13) % (n - 1);       // 1..n-1, certificate exists
    GeneratorSpec spec{m, n, r, 4000 + static_cast<std::uint64_t>(i),
                       InstanceKind::PrimalNoSlater};
    try {
      const PlantedInstance inst = generate_primal_no_slater(spec);
      const ReportRow row = verify_theorem_instance(
          inst.lp, inst.planted_primal_certificate->support);
      if (!row.passed() || !row.recovery_ok.has_value() || !*row.recovery_ok) {
        ++failures;
        if (first_failure.empty()) {
          std::ostringstream os;
          os << "seed " << spec.seed << " (m=" << m << ",n=" << n << ",r=" << r
             << ") status=" << row.status;
          first_failure = os.str();
        }
      }
    } catch (const std::exception& e) {
      ++failures;
      if (first_failure.empty()) {
        first_failure = "seed " + std::to_string(spec.seed) + ": " + e.what();
      }
    }
  }
  c.require(failures == 0, std::to_string(failures) + "/500 failed; first: " +
                               first_failure);
  seconds_out = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  c.require(seconds_out < 120.0, "runtime exceeded 2 min");
  return c;
}

// 5. Perturbation protocol at (m,n,r) = (20,60,45): explicit Farkas
//    certificate along the exposing direction at every magnitude, primal
//    residual growing monotonically there, and unharmed feasibility
//    along the range direction.
Check criterion_5(double& seconds_out) {
  Check c;
  const auto start = std::chrono::steady_clock::now();

  GeneratorSpec spec{20, 60, 45, 2025, InstanceKind::PrimalNoSlater};
  const PlantedInstance inst = generate_primal_no_slater(spec);
  const StandardFormLP lp = validate(inst.lp);
  const FacialReduction red = facially_reduce(lp);

  ExperimentConfig cfg;
  cfg.protocol = Protocol::Perturbation;
  cfg.base_seed = 2025;
  const auto rows = run_perturbation_experiment(lp, red, cfg);

  std::vector<double> magnitudes, residuals;
  const double b_norm = lp.b.norm();
  for (const ReportRow& row : rows) {
    if (row.family == "certificate") {
      c.require(row.farkas_ok.has_value() && *row.farkas_ok,
                "Farkas check failed at epsilon " + std::to_string(*row.epsilon));
      magnitudes.push_back(*row.perturbation_norm);
      residuals.push_back(*row.kkt_primal);
    } else if (*row.perturbation_norm <= 1e-2 * b_norm) {
      c.require(row.kkt_primal.has_value() && *row.kkt_primal <= 1e-6,
                "range-direction residual above 1e-6 at epsilon " +
                    std::to_string(*row.epsilon));
    }
  }
  c.require(magnitudes.size() >= 11, "certificate rows missing");
  const double rho = spearman_correlation(magnitudes, residuals);
  c.require(rho > 0.95, "Spearman correlation " + std::to_string(rho) +
                            " not above 0.95");

  seconds_out = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  c.require(seconds_out < 60.0, "runtime exceeded 1 min");
  return c;
}

// 6. Condition protocol at (50,150), 20 seeds: the family without strict
//    feasibility has a normal-matrix condition median at least 10x the
//    reduced family's, and reduction does not cost iterations in at
//    least 80% of the seeds.
Check criterion_6(double& seconds_out) {
  Check c;
  const auto start = std::chrono::steady_clock::now();

  ExperimentConfig cfg;
  cfg.protocol = Protocol::Condition;
  cfg.m = 50;
  cfg.n = 150;
  cfg.seeds = 20;
  cfg.base_seed = 600;
  cfg.r_range = {30, 135};
  const auto rows = run_condition_experiment(cfg);
  c.require(rows.size() == 60, "expected 60 rows");

  std::vector<double> kappa_ns, kappa_fr;
  int fr_not_worse = 0, pairs = 0;
  for (std::size_t i = 0; i + 2 < rows.size(); i += 3) {
    const ReportRow& ns = rows[i];
    const ReportRow& fr = rows[i + 2];
    if (ns.kappa) kappa_ns.push_back(*ns.kappa);
    if (fr.kappa) kappa_fr.push_back(*fr.kappa);
    if (ns.iterations && fr.iterations) {
      ++pairs;
      if (*fr.iterations <= *ns.iterations) ++fr_not_worse;
    }
  }
  c.require(kappa_ns.size() == 20 && kappa_fr.size() == 20,
            "kappa missing for some seeds");
  const double med_ns = median(kappa_ns);
  const double med_fr = median(kappa_fr);
  c.require(med_ns >= 10.0 * med_fr,
            "median kappa ratio " + std::to_string(med_ns / med_fr) +
                " below 10");
  c.require(pairs == 20 && fr_not_worse * 5 >= pairs * 4,
            "reduced runs took more iterations in over 20% of seeds (" +
                std::to_string(fr_not_worse) + "/" + std::to_string(pairs) +
                ")");

  seconds_out = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  c.require(seconds_out < 300.0, "runtime exceeded 5 min");
  return c;
}

// 7. Degenerate-iteration protocol at (n,m) = (200,50): the 60% cell
//    average strictly exceeds the 100% cell, and the 100% cell stays
//    at or below 1%.
Check criterion_7(double& seconds_out) {
  Check c;
  const auto start = std::chrono::steady_clock::now();

  ExperimentConfig cfg;
  cfg.protocol = Protocol::Degiter;
  cfg.m = 50;
  cfg.n = 200;
  cfg.seeds = 10;
  cfg.base_seed = 700;
  cfg.r_grid = {120, 140, 160, 180, 200};
  const auto rows = run_degeneracy_experiment(cfg);

  double avg60 = -1.0, avg100 = -1.0;
  for (const ReportRow& row : rows) {
    if (row.family != "cell_average") continue;
    c.require(row.degiter_percent.has_value(),
              "cell average missing at r = " + std::to_string(row.r));
    if (!row.degiter_percent) continue;
    if (row.r == 120) avg60 = *row.degiter_percent;
    if (row.r == 200) avg100 = *row.degiter_percent;
  }
  c.require(avg60 >= 0.0 && avg100 >= 0.0, "cell averages missing");
  c.require(avg60 > avg100, "60% cell (" + std::to_string(avg60) +
                                ") does not exceed 100% cell (" +
                                std::to_string(avg100) + ")");
  c.require(avg100 <= 1.0, "100% cell average " + std::to_string(avg100) +
                               " above 1%");

  seconds_out = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  c.require(seconds_out < 300.0, "runtime exceeded 5 min");
  return c;
}

// 8. Reduction equivalence on 100 small instances: the lift map is a
//    bijection between the extreme-point sets, and optima agree to
//    1e-8 relative between solving the original and solving the reduced
//    program then lifting.
Check criterion_8() {
  Check c;
  for (int i = 0; i < 100 && c.ok; ++i) {
    const int m = 2 + i % 3;              // 2..4
    const int n = 6 + i % 5;              // 6..10
    const int r = 1 + (i * 7) % (n - 1);  // 1..n-1
    GeneratorSpec spec{m, n, r, 8000 + static_cast<std::uint64_t>(i),
                       InstanceKind::PrimalNoSlater};
    try {
      PlantedInstance inst = generate_primal_no_slater(spec);
      if (i % 2 == 1) {
        inst = to_slater_counterpart(inst, spec.seed + 1);  // mixed corpus
      }
      const StandardFormLP lp = validate(inst.lp);
      const FacialReduction red = facially_reduce(lp);

      StandardFormLP reduced;
      reduced.A = red.A_reduced;
      reduced.b = red.b_reduced;
      reduced.c = reduce_objective(red, lp.c);
      reduced.full_row_rank_checked = true;

      const BfsEnumeration orig = enumerate_bfs(lp);
      const BfsEnumeration small = enumerate_bfs(reduced);
      c.require(orig.distinct_points.size() == small.distinct_points.size(),
                "extreme point counts differ at seed " +
                    std::to_string(spec.seed));
      for (const Vector& v : small.distinct_points) {
        c.require(contains_point(orig.distinct_points, lift(red, v), 1e-7),
                  "lifted point missing at seed " + std::to_string(spec.seed));
      }

      const SimplexResult a = solve_simplex(lp);
      const SimplexResult b = solve_simplex(reduced);
      c.require(a.status == SimplexStatus::Optimal &&
                    b.status == SimplexStatus::Optimal,
                "simplex did not reach optimality at seed " +
                    std::to_string(spec.seed));
      c.require(std::abs(a.objective - b.objective) <=
                    1e-8 * (1.0 + std::abs(a.objective)),
                "objectives disagree at seed " + std::to_string(spec.seed));
    } catch (const std::exception& e) {
      c.require(false,
                "seed " + std::to_string(spec.seed) + ": " + e.what());
    }
  }
  return c;
}

// 9. Dual side on 100 planted instances: the dual exposing support is
//    recovered exactly and the stacked matrix [A' U] is always detected
//    row-rank deficient.
Check criterion_9() {
  Check c;
  for (int i = 0; i < 100 && c.ok; ++i) {
    const int m = 2 + i % 4;        // 2..5
    const int n = m + 5 + i % 4;    // 7..13
    const int r = n - (1 + i % 4);  // support sizes 1..4
    GeneratorSpec spec{m, n, r, 9000 + static_cast<std::uint64_t>(i),
                       InstanceKind::DualNoSlater};
    try {
      const PlantedInstance inst = generate_dual_no_slater(spec);
      const StandardFormLP lp = validate(inst.lp);

      IndexSet planted;
      for (int j = 0; j < n; ++j) {
        if ((*inst.planted_dual_certificate)(j) > 0.0) planted.push_back(j);
      }
      const auto cert = find_dual_exposing_vector(lp);
      c.require(cert.has_value() && cert->support == planted,
                "dual exposing support differs at seed " +
                    std::to_string(spec.seed));
      const DualFacialReduction red = dual_facially_reduce(lp);
      c.require(red.redundant_row_found,
                "stacked matrix not rank deficient at seed " +
                    std::to_string(spec.seed));
    } catch (const std::exception& e) {
      c.require(false,
                "seed " + std::to_string(spec.seed) + ": " + e.what());
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Check(double&)> run;
  };
  auto untimed = [](Check (*f)()) {
    return [f](double& seconds) {
      const auto start = std::chrono::steady_clock::now();
      Check c = f();
      seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
      return c;
    };
  };

  const std::vector<Entry> entries = {
      {1, "golden system without strict feasibility", criterion_1},
      {2, "golden system with a nondegenerate basis", untimed(criterion_2)},
      {3, "golden converse-gap system", untimed(criterion_3)},
      {4, "theorem suite on 500 planted instances", criterion_4},
      {5, "right-hand-side perturbation protocol", criterion_5},
      {6, "normal-matrix condition protocol", criterion_6},
      {7, "degenerate-iteration protocol", criterion_7},
      {8, "reduction equivalence on 100 instances", untimed(criterion_8)},
      {9, "dual exposing recovery on 100 instances", untimed(criterion_9)},
  };

  int failures = 0;
  for (const Entry& entry : entries) {
    double seconds = 0.0;
    Check c;
    try {
      c = entry.run(seconds);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    if (c.ok) {
      std::printf("PASS  criterion %d: %s (%.2f s)\n", entry.id, entry.name,
                  seconds);
    } else {
      std::printf("FAIL  criterion %d: %s (%.2f s): %s\n", entry.id,
                  entry.name, seconds, c.detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures;
}

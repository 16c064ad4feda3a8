#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "facet/facial_reduction.hpp"
#include "facet/lp.hpp"
#include "facet/solvers.hpp"

namespace facet {

enum class Protocol { Condition, Perturbation, Degiter, Theorems };

struct ExperimentConfig {
  Protocol protocol = Protocol::Condition;
  int m = 50;
  int n = 150;
  int seeds = 10;
  std::uint64_t base_seed = 1;
  /// Condition / theorem runs draw r per seed from this closed range.
  std::pair<int, int> r_range = {30, 135};
  /// Degenerate-iteration runs sweep these r values cell by cell.
  std::vector<int> r_grid;
  /// Perturbation magnitudes; defaults to a log grid 1e-6 .. 1e-1.
  std::vector<double> epsilons;
  /// Fixed r for the perturbation instance.
  int r = 45;
  std::string output_path;
};

/// One emitted record. Absent metrics stay empty in the CSV; failures
/// are carried in `status` rather than dropped.
struct ReportRow {
  std::string protocol;
  int m = 0;
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  std::string family;
  std::string status = "ok";
  std::optional<double> epsilon;
  std::optional<double> perturbation_norm;
  std::optional<double> kappa;
  std::optional<double> kkt_primal;
  std::optional<double> kkt_dual;
  std::optional<double> kkt_gap;
  std::optional<int> iterations;
  std::optional<double> wall_ms;  // measured, never asserted on
  std::optional<double> degiter_percent;
  std::optional<int> support_size;
  std::optional<bool> farkas_ok;
  std::optional<bool> all_degenerate_ok;
  std::optional<bool> max_positive_ok;
  std::optional<bool> degree_bound_ok;
  std::optional<bool> recovery_ok;
  std::optional<bool> witness_ok;
  std::optional<bool> converse_gap;
  std::optional<std::string> branch;

  bool passed() const;  // theorem rows: no assertion failed
};

/// Per seed, solves the three families (planted without strict
/// feasibility, its strictly feasible counterpart, and the facially
/// reduced restatement) recording kappa(A D A'), KKT, iterations, time.
std::vector<ReportRow> run_condition_experiment(const ExperimentConfig& cfg);

/// Right-hand-side perturbations of a program without strict
/// feasibility: along the certificate (leaves the feasible region) and
/// along the range of the reduced matrix (stays feasible). The
/// certificate direction rows carry an explicit infeasibility check
/// (A'y >= 0 and <b_eps, y> < 0).
std::vector<ReportRow> run_perturbation_experiment(const StandardFormLP& lp,
                                                   const FacialReduction& red,
                                                   const ExperimentConfig& cfg);

/// Sweeps the planted positive-slack count r and records the
/// degenerate-pivot ratio of the dual simplex per cell, with one
/// average row appended per cell.
std::vector<ReportRow> run_degeneracy_experiment(const ExperimentConfig& cfg);

/// Exhaustive verification on small instances: with a certificate every
/// basic feasible solution must be degenerate, extreme points lose a
/// positive entry, degree bounds hold and the planted exposed set is
/// recovered; without one a nondegenerate solution forces a strictly
/// feasible witness. Rows record pass/fail per assertion.
std::vector<ReportRow> verify_theorem_suite(const ExperimentConfig& cfg);

/// Single-instance check behind verify_theorem_suite, exposed so known
/// textbook programs can be driven through the same assertions.
ReportRow verify_theorem_instance(const StandardFormLP& lp,
                                  const std::optional<IndexSet>& planted);

std::string csv_header();
void write_csv(const std::vector<ReportRow>& rows, std::ostream& os);

/// Restriction of the objective to the kept columns.
Vector reduce_objective(const FacialReduction& red, const Vector& c);

/// Spearman rank correlation; ranks assume distinct values.
double spearman_correlation(const std::vector<double>& a,
                            const std::vector<double>& b);

}  // namespace facet

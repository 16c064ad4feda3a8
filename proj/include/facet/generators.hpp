#pragma once

#include <cstdint>
#include <optional>

#include "facet/lp.hpp"

namespace facet {

enum class InstanceKind { PrimalNoSlater, PrimalSlater, DualNoSlater };

struct GeneratorSpec {
  int m = 0;
  int n = 0;
  int r = 0;  // planted interior dimension (primal) / positive slacks (dual)
  std::uint64_t seed = 0;
  InstanceKind kind = InstanceKind::PrimalNoSlater;
};

struct PlantedPrimalCertificate {
  Vector y;
  IndexSet support;  // exposed columns, in permuted coordinates
};

struct PlantedObjective {
  Vector y_bar;
  Vector s_bar;
};

/// Instance with its construction witnesses. Every planted object is
/// checked against its defining identities when the instance is built.
struct PlantedInstance {
  StandardFormLP lp;
  std::optional<PlantedPrimalCertificate> planted_primal_certificate;
  std::optional<Vector> planted_dual_certificate;
  Vector planted_feasible_point;
  /// column_permutation[j] = pre-permutation index of the column now at j.
  std::vector<int> column_permutation;
  std::optional<PlantedObjective> objective_plant;
  GeneratorSpec spec;
};

struct ObjectivePlant {
  Vector c;
  Vector y_bar;
  Vector s_bar;
};

/// c = A'y_bar + s_bar with s_bar drawn uniform in [0.1, 1.1], which
/// makes the dual strictly feasible by construction.
ObjectivePlant make_objective(const StandardFormLP& lp, std::uint64_t seed);

/// Plants an exposing vector: A = [A1 A2] (columns permuted) with
/// A1'y = 0, b = A1 v_hat for positive v_hat, and A2'y > 0. The feasible
/// set has exactly r coordinates free to be positive. With r = n the
/// construction degenerates to a strictly feasible instance.
PlantedInstance generate_primal_no_slater(const GeneratorSpec& spec);

/// Same A and c, right-hand side replaced by b = A x0 for a strictly
/// positive x0 (drawn uniform in [0.5, 1.5] unless given explicitly).
PlantedInstance to_slater_counterpart(const PlantedInstance& inst,
                                      std::uint64_t seed,
                                      const std::optional<Vector>& x0 = {});

/// Plants a dual exposing vector w >= 0 with |supp(w)| = n - r: rows of
/// A are random combinations of a basis of {w}^perp, s vanishes exactly
/// on supp(w), c = A'y + s, and b = A x_hat keeps the primal feasible.
/// With r = n no vector is planted and the dual is strictly feasible.
PlantedInstance generate_dual_no_slater(const GeneratorSpec& spec);

/// Dispatch on spec.kind.
PlantedInstance generate(const GeneratorSpec& spec);

}  // namespace facet

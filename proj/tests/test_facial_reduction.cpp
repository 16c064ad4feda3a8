#include <doctest.h>

#include "facet/facial_reduction.hpp"
#include "facet/generators.hpp"
#include "facet/rng.hpp"
#include "fixtures.hpp"

using namespace facet;

TEST_CASE("exposing vector found exactly when strict feasibility fails") {
  {
    const auto cert = find_exposing_vector(fixtures::no_slater_2x5());
    REQUIRE(cert.has_value());
    CHECK(cert->support == IndexSet{0, 2, 3});
    CHECK(cert->z.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK(cert->z.minCoeff() >= -cert->tolerance_used);
    const StandardFormLP lp = fixtures::no_slater_2x5();
    CHECK((lp.A.transpose() * cert->y - cert->z).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(lp.b.dot(cert->y)) <=
          tol::kCert * (1.0 + lp.b.norm()) * cert->y.norm());
  }
  CHECK_FALSE(find_exposing_vector(fixtures::one_nondegenerate_2x5()).has_value());
  CHECK_FALSE(find_exposing_vector(fixtures::degenerate_slater_2x5()).has_value());
}

TEST_CASE("facial range is the support complement") {
  ExposingCertificate cert;
  cert.support = {0, 2, 3};
  CHECK(facial_range(cert, 5) == IndexSet{1, 4});
  cert.support = {0};
  CHECK(facial_range(cert, 1).empty());
  cert.support = {4};
  CHECK(facial_range(cert, 5) == IndexSet{0, 1, 2, 3});
}

TEST_CASE("redundant row removal keeps an independent subset") {
  {
    Matrix M(2, 2);
    M << 1, 2,
         1, 2;
    Vector rhs(2);
    rhs << 1, 1;
    const RowSelection sel = remove_redundant_rows(M, rhs);
    CHECK(sel.kept_rows == IndexSet{0});
    CHECK(sel.M_kept.rows() == 1);
    CHECK(sel.M_kept(0, 0) == 1.0);
    CHECK(sel.M_kept(0, 1) == 2.0);
    CHECK(sel.rhs_kept(0) == 1.0);
  }
  {
    const Matrix M = Matrix::Identity(3, 3);
    const RowSelection sel = remove_redundant_rows(M, Vector::Ones(3));
    CHECK(sel.kept_rows == IndexSet{0, 1, 2});
  }
  {
    Matrix M(3, 2);
    M << 1, 0,
         0, 1,
         0, 0;
    Vector rhs = Vector::Ones(3);
    CHECK_THROWS_AS(remove_redundant_rows(M, rhs), InconsistentRedundantRow);
  }
}

TEST_CASE("full reduction of the golden no-slater system") {
  const StandardFormLP lp = validate(fixtures::no_slater_2x5());
  const FacialReduction red = facially_reduce(lp);

  CHECK(red.kept_columns == IndexSet{1, 4});
  CHECK(red.kept_rows == IndexSet{0});
  REQUIRE(red.A_reduced.rows() == 1);
  REQUIRE(red.A_reduced.cols() == 2);
  CHECK(red.A_reduced(0, 0) == doctest::Approx(1.0));
  CHECK(red.A_reduced(0, 1) == doctest::Approx(2.0));
  CHECK(red.b_reduced(0) == doctest::Approx(1.0));
  CHECK(red.reduction_rounds == 1);
  REQUIRE(red.certificate.has_value());
  CHECK(red.slater_verified);

  StandardFormLP reduced;
  reduced.A = red.A_reduced;
  reduced.b = red.b_reduced;
  reduced.c = Vector::Zero(2);
  CHECK(is_strictly_feasible_point(reduced, red.slater_witness));

  // Second application is the identity: strict feasibility restored.
  CHECK_FALSE(find_exposing_vector(validate(reduced)).has_value());
}

TEST_CASE("reduction is the identity on strictly feasible systems") {
  const FacialReduction red =
      facially_reduce(fixtures::one_nondegenerate_2x5());
  CHECK_FALSE(red.certificate.has_value());
  CHECK(red.kept_columns == IndexSet{0, 1, 2, 3, 4});
  CHECK(red.kept_rows == IndexSet{0, 1});
  CHECK(red.reduction_rounds == 0);
  CHECK(red.slater_verified);
  CHECK(is_strictly_feasible_point(fixtures::one_nondegenerate_2x5(),
                                   lift(red, red.slater_witness)));
}

TEST_CASE("lift and restrict move between the original and reduced spaces") {
  const FacialReduction red = facially_reduce(fixtures::no_slater_2x5());

  Vector v(2);
  v << 1, 0;
  Vector expected(5);
  expected << 0, 1, 0, 0, 0;
  CHECK((lift(red, v) - expected).cwiseAbs().maxCoeff() == 0.0);

  Vector w(2);
  w << 1.0 / 3.0, 1.0 / 3.0;
  CHECK(restrict(red, lift(red, w)) == w);  // exact round trip

  Vector outside(5);
  outside << 1, 0, 0, 0, 0;
  CHECK_THROWS_AS(restrict(red, outside), NotInFace);
}

TEST_CASE("certificate is orthogonal to every enumerated feasible point") {
  const StandardFormLP lp = fixtures::no_slater_2x5();
  const auto cert = find_exposing_vector(lp);
  REQUIRE(cert.has_value());
  const BfsEnumeration e = enumerate_bfs(lp);
  for (const BasisPoint& p : e.entries) {
    const double tau = tol::zero(p.x.cwiseAbs().maxCoeff());
    for (int i = 0; i < 5; ++i) {
      CHECK(std::abs(p.x(i) * cert->z(i)) <=
            tau * cert->z.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("reduction preserves the feasible set and objective values") {
  RngStream stream(5);
  for (int trial = 0; trial < 6; ++trial) {
    GeneratorSpec spec;
    spec.m = 3;
    spec.n = 8;
    spec.r = 3 + static_cast<int>(stream.below(3));
    spec.seed = 100 + trial;
    const PlantedInstance inst = generate_primal_no_slater(spec);
    const StandardFormLP lp = validate(inst.lp);
    const FacialReduction red = facially_reduce(lp);
    REQUIRE(red.certificate.has_value());

    StandardFormLP reduced;
    reduced.A = red.A_reduced;
    reduced.b = red.b_reduced;
    reduced.c = Vector::Zero(red.A_reduced.cols());
    for (std::size_t k = 0; k < red.kept_columns.size(); ++k) {
      reduced.c(k) = lp.c(red.kept_columns[k]);
    }

    const BfsEnumeration original = enumerate_bfs(lp);
    const BfsEnumeration small = enumerate_bfs(reduced);
    REQUIRE(original.distinct_points.size() == small.distinct_points.size());
    for (const Vector& v : small.distinct_points) {
      const Vector x = lift(red, v);
      bool matched = false;
      for (const Vector& p : original.distinct_points) {
        if ((p - x).cwiseAbs().maxCoeff() <= tol::kDedup) matched = true;
      }
      CHECK(matched);
      CHECK(lp.c.dot(x) == doctest::Approx(reduced.c.dot(v)).epsilon(1e-12));
    }
  }
}

TEST_CASE("a certificate always forces a redundant row") {
  RngStream stream(9);
  for (int trial = 0; trial < 5; ++trial) {
    GeneratorSpec spec;
    spec.m = 2 + static_cast<int>(stream.below(3));
    spec.n = spec.m + 3 + static_cast<int>(stream.below(4));
    spec.r = 1 + static_cast<int>(stream.below(spec.n - spec.m));
    spec.seed = 500 + trial;
    const PlantedInstance inst = generate_primal_no_slater(spec);
    const FacialReduction red = facially_reduce(validate(inst.lp));
    REQUIRE(red.certificate.has_value());
    CHECK(static_cast<int>(red.kept_rows.size()) <= spec.m - 1);
    CHECK_FALSE(find_exposing_vector(StandardFormLP{
                    red.A_reduced, red.b_reduced,
                    Vector::Zero(red.A_reduced.cols()), {}, false})
                    .has_value());
  }
}

TEST_CASE("certificate support is invariant under positive scaling") {
  const StandardFormLP lp = fixtures::no_slater_2x5();
  StandardFormLP scaled = lp;
  scaled.A *= 7.3;
  scaled.b *= 7.3;
  const auto a = find_exposing_vector(lp);
  const auto b = find_exposing_vector(scaled);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->support == b->support);
}

TEST_CASE("dual exposing vector on hand-checked systems") {
  {
    StandardFormLP lp;
    lp.A.resize(1, 2);
    lp.A << 1, -1;
    lp.b = Vector::Zero(1);
    lp.c = Vector::Zero(2);
    const auto cert = find_dual_exposing_vector(lp);
    REQUIRE(cert.has_value());
    CHECK(cert->support == IndexSet{0, 1});
    CHECK(cert->w(0) == doctest::Approx(cert->w(1)).epsilon(1e-6));
    CHECK((lp.A * cert->w).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::abs(lp.c.dot(cert->w)) <= 1e-9);
  }
  {
    StandardFormLP lp;
    lp.A.resize(1, 1);
    lp.A << 1;
    lp.b = Vector::Ones(1);
    lp.c = Vector::Ones(1);
    CHECK_FALSE(find_dual_exposing_vector(lp).has_value());
  }
}

TEST_CASE("dual reduction flags the redundant stacked row") {
  {
    StandardFormLP lp;
    lp.A.resize(1, 2);
    lp.A << 1, -1;
    lp.b = Vector::Zero(1);
    lp.c = Vector::Zero(2);
    const DualFacialReduction red = dual_facially_reduce(lp);
    CHECK(red.kept_slack_columns.empty());
    CHECK(red.redundant_row_found);
  }
  {
    StandardFormLP lp;
    lp.A.resize(1, 2);
    lp.A << 1, 1;
    lp.b = Vector::Ones(1);
    lp.c = Vector::Ones(2);  // y = 0, s = (1,1) is strictly dual feasible
    const DualFacialReduction red = dual_facially_reduce(lp);
    CHECK(red.kept_slack_columns == IndexSet{0, 1});
    CHECK_FALSE(red.redundant_row_found);
  }
}

TEST_CASE("planted dual support is recovered") {
  RngStream stream(13);
  for (int trial = 0; trial < 5; ++trial) {
    GeneratorSpec spec;
    spec.kind = InstanceKind::DualNoSlater;
    spec.m = 2 + static_cast<int>(stream.below(2));
    spec.n = spec.m + 5 + static_cast<int>(stream.below(3));
    spec.r = spec.n - 1 - static_cast<int>(stream.below(3));
    spec.seed = 900 + trial;
    const PlantedInstance inst = generate_dual_no_slater(spec);

    const auto cert = find_dual_exposing_vector(validate(inst.lp));
    REQUIRE(cert.has_value());
    IndexSet planted;
    for (int i = 0; i < spec.n; ++i) {
      if ((*inst.planted_dual_certificate)(i) > 0.0) planted.push_back(i);
    }
    CHECK(cert->support == planted);

    const DualFacialReduction red = dual_facially_reduce(validate(inst.lp));
    CHECK(red.redundant_row_found);
    CHECK(static_cast<int>(red.kept_slack_columns.size()) == spec.r);
  }
}

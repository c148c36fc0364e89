#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "projdist/bounds.hpp"
#include "projdist/idempotent.hpp"
#include "projdist/linalg.hpp"
#include "projdist/matched.hpp"

using namespace projdist;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return ComplexMatrix(std::move(m));
}

Idempotent q_family_of(double a) { return validate_idempotent(mat2(1, a, 0, 0)); }

}  // namespace

TEST_CASE("lambda_bound closed cases") {
  Idempotent q1 = q_family_of(1.0);
  Projection pr = range_projection(q1);
  CHECK(lambda_bound(pr, q1) == doctest::Approx(matched_distance(q1)).epsilon(1e-12));

  Projection p = random_projection(4, 2, 10);
  CHECK(lambda_bound(p, p.as_idempotent()) <= 1e-8);

  // rank(I) - rank(Q_1) = 1 on top of the squared minimum distance.
  Projection id = validate_projection(ComplexMatrix::identity(2));
  CHECK(lambda_bound(id, q1) == doctest::Approx(1.2592801267497653).epsilon(1e-12));
}

TEST_CASE("lambda_bound rejects non-covering P") {
  Idempotent q1 = q_family_of(1.0);
  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(2, 2);
  lower(1, 1) = 1.0;
  Projection p = validate_projection(ComplexMatrix(std::move(lower)));
  CHECK_THROWS_AS((void)lambda_bound(p, q1), ValidationError);
}

TEST_CASE("check_bounds on the closed 2x2 case") {
  Idempotent q1 = q_family_of(1.0);
  BoundReport report = check_bounds(range_projection(q1), q1);

  CHECK(report.distance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.lambda_pq == doctest::Approx(0.76536686473017954).epsilon(1e-12));
  CHECK(report.lower_ok);
  CHECK(report.upper_ok);  // 1 <= sqrt2 * 0.7653... = 1.0823922...
  CHECK(report.pinv_distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(report.pinv_coefficient == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
  CHECK(report.pinv_ok);
  CHECK_FALSE(report.lower_tight);
  CHECK_FALSE(report.upper_tight);
}

TEST_CASE("check_bounds is tight for coinciding projections") {
  Projection p = random_projection(4, 2, 50);
  BoundReport report = check_bounds(p, p.as_idempotent());
  CHECK(report.distance <= 1e-9);
  CHECK(report.lambda_pq <= 1e-9);
  CHECK(report.lower_tight);
  CHECK(report.upper_tight);
}

TEST_CASE("sandwich holds over a random covering suite") {
  for (int k = 0; k < 40; ++k) {
    Idempotent q = random_idempotent(3 + k % 4, 1 + k % 2, 1.0, 800 + k);
    Projection p = random_covering_projection(q, k % 3, 900 + k);
    BoundReport report = check_bounds(p, q);
    CHECK(report.lower_ok);
    CHECK(report.upper_ok);
    CHECK(report.pinv_ok);
  }
}

TEST_CASE("bilateral ratio approaches its closed limits") {
  CHECK(bilateral_check(q_family_of(1e-4)).ratio ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-3));
  CHECK(bilateral_check(q_family_of(1e4)).ratio == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(bilateral_check(q_family_of(1.0)).ratio ==
        doctest::Approx(0.76536686473017954).epsilon(1e-10));

  BilateralResult degenerate = bilateral_check(random_projection(3, 1, 2).as_idempotent());
  CHECK(degenerate.degenerate);

  for (int k = 0; k < 20; ++k) {
    BilateralResult r = bilateral_check(random_idempotent(4, 2, 1.0, 1000 + k));
    REQUIRE_FALSE(r.degenerate);
    CHECK(r.residual <= 1e-9);
  }
}

TEST_CASE("drazin inverse of an invertible matrix is its inverse") {
  ComplexMatrix a = mat2(1, 2, 3, 4);
  DrazinResult dz = drazin(a);
  CHECK(dz.index == 0);
  CHECK(frobenius_norm(dz.a_d - mat2(-2.0, 1.0, 1.5, -0.5)) <= 1e-10);
}

TEST_CASE("drazin inverse of a nonzero nilpotent vanishes") {
  DrazinResult dz = drazin(mat2(0, 1, 0, 0));
  CHECK(dz.index == 2);
  CHECK(frobenius_norm(dz.a_d) <= 1e-12);
}

TEST_CASE("drazin on the family recovers its square") {
  DrazinFamily fam = drazin_family(1, 1.0);
  DrazinResult dz = drazin(fam.a);
  CHECK(dz.index == 2);
  CHECK(frobenius_norm(dz.a_d - fam.q.matrix()) <= 1e-8);
  CHECK(dz.aa_dag.rank() - fam.q.rank() == 1);
}

TEST_CASE("drazin_corollaries gap values") {
  BoundReport r11 = drazin_corollaries(drazin_family(1, 1.0).a);
  CHECK(r11.distance * r11.distance == doctest::Approx(4.0).epsilon(1e-10));

  BoundReport r205 = drazin_corollaries(drazin_family(2, 0.5).a);
  CHECK(r205.distance * r205.distance == doctest::Approx(2.25).epsilon(1e-10));
  CHECK(r205.lower_ok);
  CHECK(r205.upper_ok);

  ComplexMatrix invertible = mat2(2, 1, 1, 2);
  BoundReport rinv = drazin_corollaries(invertible);
  CHECK(rinv.distance <= 1e-9);
  CHECK(rinv.lower_tight);
  CHECK(rinv.upper_tight);
}

TEST_CASE("family constructors") {
  CHECK(frobenius_norm(q_family(1.0).matrix() - mat2(1, 1, 0, 0)) == 0.0);
  CHECK_THROWS_AS((void)q_family(-1.0), ValidationError);
  CHECK_THROWS_AS((void)q_family(0.0), ValidationError);
  CHECK_THROWS_AS((void)drazin_family(0, 1.0), ValidationError);

  DrazinFamily fam = drazin_family(1, 1.0);
  SvdResult dec = svd(fam.q.matrix());
  REQUIRE(dec.singular_values.size() == 4);
  CHECK(dec.singular_values[0] * dec.singular_values[0] ==
        doctest::Approx(3.6180339887498948).epsilon(1e-10));
  CHECK(dec.singular_values[1] * dec.singular_values[1] ==
        doctest::Approx(1.3819660112501052).epsilon(1e-10));

  DrazinFamily fam2 = drazin_family(2, 0.5);
  DrazinResult dz2 = drazin(fam2.a);
  CHECK(dz2.aa_dag.rank() - fam2.q.rank() == 1);
}

TEST_CASE("sqrt2 optimality scan") {
  std::vector<ScanEntry> table = sqrt2_optimality_scan({1, 2, 5, 50}, {0.01, 0.5, 1.0});
  REQUIRE(table.size() == 12);
  for (const ScanEntry& e : table) {
    CHECK(e.ratio_sq <= 2.0 + 1e-9);
    CHECK(std::abs(e.closed_form_min_sq - e.generic_min_sq) <= 1e-7);
  }

  // (n=1, a=1): numerator 1 + 3, denominator b + 1 with
  // b = e1 - sqrt(e1) + e2 - sqrt(e2), e_{1,2} = (5 ± sqrt5)/2.
  const ScanEntry& first = table.front();
  CHECK(first.n == 1);
  CHECK(first.a == doctest::Approx(0.01));
  ScanEntry n1a1{};
  for (const ScanEntry& e : table) {
    if (e.n == 1 && e.a == 1.0) n1a1 = e;
  }
  CHECK(n1a1.ratio_sq == doctest::Approx(1.3687771502110184).epsilon(1e-12));

  // The large-n small-a corner stays near 1: the constant terms dominate
  // until n*a^2 is large, so the value is far below the asymptotic 2.
  ScanEntry corner{};
  for (const ScanEntry& e : table) {
    if (e.n == 50 && e.a == 0.01) corner = e;
  }
  CHECK(corner.ratio_sq == doctest::Approx(1.0050244944010954).epsilon(1e-10));
}

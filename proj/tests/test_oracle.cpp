#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "projdist/idempotent.hpp"
#include "projdist/linalg.hpp"
#include "projdist/matched.hpp"
#include "projdist/oracle.hpp"

using namespace projdist;

namespace {

Idempotent q_family_of(double a) {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, a, 0.0, 0.0;
  return validate_idempotent(ComplexMatrix(std::move(m)));
}

}  // namespace

TEST_CASE("grid search approximates the closed-form minimum") {
  Idempotent q1 = q_family_of(1.0);
  OracleResult res = grid_min_2x2(q1, 400);
  CHECK(res.method == OracleMethod::grid2);
  CHECK(std::abs(res.best_distance - 0.76536686473017954) <= 2e-3);
  CHECK(frobenius_norm(res.best_projection.matrix() - matched_projection(q1).matrix()) <=
        5e-2);
  CHECK(res.samples_evaluated >= 400L * 400L);
}

TEST_CASE("grid search is exact for projections and the zero idempotent") {
  Projection p = random_projection(2, 1, 14);
  OracleResult res = grid_min_2x2(p.as_idempotent(), 150);
  CHECK(res.best_distance <= 1e-12);
  CHECK(frobenius_norm(res.best_projection.matrix() - p.matrix()) <= 1e-9);

  OracleResult zero = grid_min_2x2(validate_idempotent(ComplexMatrix::zero(2, 2)), 150);
  CHECK(zero.best_distance <= 1e-12);
  CHECK(frobenius_norm(zero.best_projection.matrix()) <= 1e-12);
}

TEST_CASE("grid search guards its scope") {
  Idempotent q3 = random_idempotent(3, 1, 1.0, 5);
  CHECK_THROWS_AS((void)grid_min_2x2(q3, 400), ValidationError);
  CHECK_THROWS_AS((void)grid_min_2x2(q_family_of(1.0), 10), ValidationError);
}

TEST_CASE("grid minimum converges with resolution") {
  Idempotent q = q_family_of(2.0);
  const double exact = matched_distance(q);
  const double coarse = grid_min_2x2(q, 120).best_distance - exact;
  const double fine = grid_min_2x2(q, 480).best_distance - exact;
  CHECK(coarse >= -1e-12);  // a grid never beats the true minimum
  CHECK(fine >= -1e-12);
  // Gap scales with the squared lattice spacing: ~3e-3 at 120, ~2e-4 at 480.
  CHECK(coarse <= 3e-3);
  CHECK(fine <= 2e-4);
}

TEST_CASE("sampled extrema include the closed-form optimizers") {
  Idempotent q = random_idempotent(4, 2, 1.0, 27);
  auto [min_res, max_res] = sampled_extrema(q, 5000, 123);
  CHECK(min_res.method == OracleMethod::sampled);

  const double md = matched_distance(q);
  const double max_q = frobenius_norm(
      ComplexMatrix::identity(4) - matched_projection(q).matrix() - q.matrix());
  CHECK(std::abs(min_res.best_distance - md) <= 1e-8);
  CHECK(std::abs(max_res.best_distance - max_q) <= 1e-8);

  // The reported distances match their stored projections.
  CHECK(std::abs(frobenius_norm(min_res.best_projection.matrix() - q.matrix()) -
                 min_res.best_distance) <= 1e-12);
  CHECK(std::abs(frobenius_norm(max_res.best_projection.matrix() - q.matrix()) -
                 max_res.best_distance) <= 1e-12);
}

TEST_CASE("sampled extrema never beat the closed-form bounds across ranks and scales") {
  for (int k = 0; k < 6; ++k) {
    Idempotent q = random_idempotent(3 + k % 5, 1 + k % 3, (k % 2 == 0) ? 0.5 : 5.0, 40 + k);
    CHECK_NOTHROW((void)sampled_extrema(q, 2000, 77 + k));
  }
}

TEST_CASE("sampled extrema guard their scope") {
  Idempotent q = random_idempotent(4, 2, 1.0, 1);
  CHECK_THROWS_AS((void)sampled_extrema(q, 100, 1), ValidationError);  // too few samples
  Idempotent big = random_idempotent(9, 4, 1.0, 2);
  CHECK_THROWS_AS((void)sampled_extrema(big, 5000, 1), ValidationError);
}

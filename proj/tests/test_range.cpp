#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "projdist/idempotent.hpp"
#include "projdist/linalg.hpp"
#include "projdist/matched.hpp"
#include "projdist/range.hpp"

using namespace projdist;

namespace {

Idempotent q_family_of(double a) {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, a, 0.0, 0.0;
  return validate_idempotent(ComplexMatrix(std::move(m)));
}

double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return frobenius_norm(a - b); }

}  // namespace

TEST_CASE("idempotent_path endpoints and midpoint") {
  Idempotent q = q_family_of(1.0);
  BlockForm bf = block_decompose(q);

  CHECK(dist(idempotent_path(bf, 0.0).matrix(), range_projection(q).matrix()) < 1e-10);
  CHECK(dist(idempotent_path(bf, 1.0).matrix(), q.matrix()) < 1e-10);
  CHECK(dist(idempotent_path(bf, 0.5).matrix(), q_family_of(0.5).matrix()) < 1e-10);
}

TEST_CASE("j2_path endpoint distances") {
  Idempotent q = random_idempotent(5, 1, 1.0, 41);
  const double lambda1 = frobenius_norm(block_decompose(q).a);
  const int slots = 5 - 2;  // n - 2r

  const double start = dist(j2_path(q, 0, 0.0).matrix(), q.matrix());
  CHECK(start == doctest::Approx(lambda1).epsilon(1e-9));

  const double end = dist(j2_path(q, slots, 1.0).matrix(), q.matrix());
  CHECK(end == doctest::Approx(std::sqrt(lambda1 * lambda1 + 5.0)).epsilon(1e-9));

  for (int i = 0; i <= slots; ++i) {
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CHECK_NOTHROW((void)j2_path(q, i, t));  // every point validates as a projection
    }
  }
}

TEST_CASE("j2_path rejects out-of-scope calls") {
  Idempotent tall = random_idempotent(3, 2, 1.0, 6);  // r > n - r
  CHECK_THROWS_AS((void)j2_path(tall, 0, 0.5), ValidationError);
  Idempotent q = random_idempotent(4, 1, 1.0, 7);
  CHECK_THROWS_AS((void)j2_path(q, 3, 0.5), ValidationError);  // i > n - 2r
  CHECK_THROWS_AS((void)j2_path(q, 0, 1.5), ValidationError);
}

TEST_CASE("construct_at_distance hits the requested distance") {
  Idempotent q1 = q_family_of(1.0);

  PathPoint at_min = construct_at_distance(q1, 0.76536686473017954);
  CHECK(dist(at_min.projection.matrix(), matched_projection(q1).matrix()) <= 1e-6);

  PathPoint at_lambda1 = construct_at_distance(q1, 1.0);
  CHECK(dist(at_lambda1.projection.matrix(), range_projection(q1).matrix()) <= 1e-6);

  PathPoint mid = construct_at_distance(q1, 0.9);
  CHECK(std::abs(mid.achieved_distance - 0.9) <= 1e-6);
  CHECK(std::abs(dist(mid.projection.matrix(), q1.matrix()) - 0.9) <= 1e-6);
}

TEST_CASE("construct_at_distance covers all three segments") {
  Idempotent q = random_idempotent(5, 2, 1.0, 23);
  MatchedResult res = analyze(q);

  for (double alpha :
       {res.min_distance, 0.5 * (res.min_distance + res.lambda1), res.lambda1,
        0.5 * (res.lambda1 + res.lambda2), res.lambda2,
        0.5 * (res.lambda2 + res.max_distance), res.max_distance}) {
    PathPoint point = construct_at_distance(q, alpha);
    CHECK(std::abs(point.achieved_distance - alpha) <= 1e-6);
    CHECK(std::abs(dist(point.projection.matrix(), q.matrix()) - point.achieved_distance) <=
          1e-10);
  }
}

TEST_CASE("construct_at_distance dualizes dominant ranks") {
  Idempotent q = random_idempotent(5, 4, 1.0, 29);  // r > n - r
  MatchedResult res = analyze(q);
  const double alpha = 0.5 * (res.lambda1 + res.lambda2);
  PathPoint point = construct_at_distance(q, alpha);
  CHECK(std::abs(point.achieved_distance - alpha) <= 1e-6);
  const double direct = dist(point.projection.matrix(), q.matrix());
  const double dual = frobenius_norm(
      (ComplexMatrix::identity(5) - point.projection.matrix()) -
      (ComplexMatrix::identity(5) - q.matrix().adjoint()));
  CHECK(std::abs(direct - dual) <= 1e-9);
}

TEST_CASE("construct_at_distance range errors") {
  Idempotent q1 = q_family_of(1.0);
  CHECK_THROWS_AS((void)construct_at_distance(q1, 10.0), RangeError);
  CHECK_THROWS_AS((void)construct_at_distance(q1, 0.1), RangeError);
  CHECK_THROWS_AS((void)construct_at_distance(q1, 0.9, -1.0), ValidationError);

  Idempotent zero = validate_idempotent(ComplexMatrix::zero(3, 3));
  CHECK_THROWS_AS((void)construct_at_distance(zero, 0.5), ValidationError);
  Idempotent id = validate_idempotent(ComplexMatrix::identity(3));
  CHECK_THROWS_AS((void)construct_at_distance(id, 0.5), ValidationError);
}

TEST_CASE("distance_range") {
  auto [lo1, hi1] = distance_range(q_family_of(1.0));
  CHECK(lo1 == doctest::Approx(0.76536686473017954).epsilon(1e-12));
  CHECK(hi1 == doctest::Approx(1.8477590650225735).epsilon(1e-12));

  auto [lop, hip] = distance_range(random_projection(4, 2, 3).as_idempotent());
  CHECK(lop <= 1e-8);
  CHECK(hip == doctest::Approx(2.0).epsilon(1e-10));

  auto [loz, hiz] = distance_range(validate_idempotent(ComplexMatrix::zero(3, 3)));
  CHECK(loz <= 1e-12);
  CHECK(hiz == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("path points carry a consistent segment tag") {
  Idempotent q = random_idempotent(4, 1, 1.0, 91);
  MatchedResult res = analyze(q);

  CHECK(construct_at_distance(q, 0.5 * (res.min_distance + res.lambda1)).segment ==
        Segment::J1);
  CHECK(construct_at_distance(q, 0.5 * (res.lambda1 + res.lambda2)).segment == Segment::J2);
  CHECK(construct_at_distance(q, 0.5 * (res.lambda2 + res.max_distance)).segment ==
        Segment::J3);
}

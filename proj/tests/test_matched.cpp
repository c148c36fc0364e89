#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

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

// Nearest projection to [[1,1],[0,0]], from the scalar block evaluation
// with B = [sqrt2]: entries (2+sqrt2)/4, 1/(2 sqrt2), 1/(2(2+sqrt2)).
ComplexMatrix matched_of_q1() {
  return mat2(0.8535533905932737, 0.35355339059327373, 0.35355339059327373,
              0.14644660940672624);
}

}  // namespace

TEST_CASE("matched_projection fixes projections and the trivial idempotents") {
  Projection p = random_projection(4, 2, 12);
  CHECK(frobenius_norm(matched_projection(p.as_idempotent()).matrix() - p.matrix()) <= 1e-8);

  Idempotent zero = validate_idempotent(ComplexMatrix::zero(3, 3));
  CHECK(frobenius_norm(matched_projection(zero).matrix()) <= 1e-10);

  Idempotent id = validate_idempotent(ComplexMatrix::identity(3));
  CHECK(frobenius_norm(matched_projection(id).matrix() - ComplexMatrix::identity(3)) <= 1e-10);
}

TEST_CASE("the two computation routes agree") {
  Idempotent q1 = q_family_of(1.0);
  ComplexMatrix direct = matched_projection(q1).matrix();
  ComplexMatrix blocked = matched_projection_block(block_decompose(q1)).matrix();
  CHECK(frobenius_norm(direct - blocked) <= 1e-10);
  CHECK(frobenius_norm(direct - matched_of_q1()) <= 1e-12);

  Idempotent q6 = random_idempotent(6, 3, 1.0, 77);
  CHECK(frobenius_norm(matched_projection(q6).matrix() -
                       matched_projection_block(block_decompose(q6)).matrix()) <= 1e-9);
}

TEST_CASE("block route endpoint: vanishing A returns the range projection") {
  Idempotent q = random_idempotent(5, 2, 1.0, 31);
  BlockForm bf = block_decompose(q);
  Projection pr = range_projection(q);
  bf.a = ComplexMatrix::zero(bf.a.rows(), bf.a.cols());
  ComplexMatrix recomposed_range = matched_projection_block(bf).matrix();
  // With A = 0 the block form recomposes to P_R(Q) itself.
  CHECK(frobenius_norm(recomposed_range - pr.matrix()) <= 1e-9);
}

TEST_CASE("pseudoinverse of |Q*| equals the projection product root") {
  for (int k = 0; k < 12; ++k) {
    Idempotent q = (k == 0) ? q_family_of(1.0)
                            : random_idempotent(2 + k % 4, 1 + k % 2, 1.0, 600 + k);
    ComplexMatrix abs_pinv = pinv(abs_conjugate(q.matrix()));
    ComplexMatrix p_range = range_projection(q).matrix();
    ComplexMatrix p_adjoint = column_space_projection(q.matrix().adjoint());
    ComplexMatrix product_root = sqrtm_psd(p_range * p_adjoint * p_range);
    CHECK(frobenius_norm(abs_pinv - product_root) <= 1e-7);
  }
}

TEST_CASE("matched_distance closed form") {
  Projection p = random_projection(5, 3, 4);
  CHECK(matched_distance(p.as_idempotent()) <= 1e-8);

  for (double a : {0.25, 0.5, 1.0, 2.0, 10.0}) {
    const double expected = std::sqrt(1.0 + a * a - std::sqrt(1.0 + a * a));
    CHECK(matched_distance(q_family_of(a)) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(matched_distance(q_family_of(1.0)) ==
        doctest::Approx(0.76536686473017954).epsilon(1e-12));

  Idempotent q = random_idempotent(5, 2, 2.0, 55);
  const double direct = frobenius_norm(matched_projection(q).matrix() - q.matrix());
  CHECK(matched_distance(q) == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("analyze on the closed-form family") {
  MatchedResult res = analyze(q_family_of(1.0));
  CHECK(res.min_distance == doctest::Approx(0.76536686473017954).epsilon(1e-12));
  CHECK(res.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.lambda2 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(res.max_distance == doctest::Approx(1.8477590650225735).epsilon(1e-12));
  CHECK(res.invariant_constant == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("analyze on projections and the invariant identity") {
  Projection p = random_projection(4, 2, 18);
  MatchedResult res = analyze(p.as_idempotent());
  CHECK(res.min_distance <= 1e-8);
  CHECK(res.max_distance == doctest::Approx(2.0).epsilon(1e-10));  // sqrt(n)

  for (int k = 0; k < 10; ++k) {
    MatchedResult r = analyze(random_idempotent(3 + k % 4, 1 + k % 3, 1.0, 700 + k));
    CHECK(std::abs(r.min_distance * r.min_distance + r.max_distance * r.max_distance -
                   r.invariant_constant) <= 1e-7);
    CHECK(r.min_distance <= r.lambda1 + 1e-9);
    CHECK(r.lambda1 <= r.lambda2 + 1e-9);
    CHECK(r.lambda2 <= r.max_distance + 1e-9);
  }
}

TEST_CASE("norm_of_matched") {
  CHECK(norm_of_matched(validate_idempotent(ComplexMatrix::identity(4))) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(norm_of_matched(q_family_of(3.0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm_of_matched(validate_idempotent(ComplexMatrix::zero(3, 3))) == 0.0);
}

TEST_CASE("factor_v splits m(Q) and the range projection") {
  Projection p = random_projection(4, 2, 66);
  ComplexMatrix vp = factor_v(p.as_idempotent());
  CHECK(frobenius_norm(vp * vp.adjoint() - p.matrix()) <= 1e-10);
  CHECK(frobenius_norm(vp.adjoint() * vp - p.matrix()) <= 1e-10);

  Idempotent q1 = q_family_of(1.0);
  ComplexMatrix v1 = factor_v(q1);
  CHECK(frobenius_norm(v1 * v1.adjoint() - matched_projection(q1).matrix()) <= 1e-10);
  CHECK(frobenius_norm(v1.adjoint() * v1 - range_projection(q1).matrix()) <= 1e-10);

  Idempotent q = random_idempotent(6, 2, 1.0, 88);
  ComplexMatrix v = factor_v(q);
  CHECK(frobenius_norm(v * v.adjoint() - matched_projection(q).matrix()) <= 1e-8);
  CHECK(frobenius_norm(v.adjoint() * v - range_projection(q).matrix()) <= 1e-8);
}

TEST_CASE("symmetry identities") {
  Idempotent q = random_idempotent(5, 2, 1.0, 99);
  ComplexMatrix m_q = matched_projection(q).matrix();

  Idempotent q_adj = validate_idempotent(q.matrix().adjoint());
  CHECK(frobenius_norm(matched_projection(q_adj).matrix() - m_q) <= 1e-8);

  Idempotent q_comp =
      validate_idempotent(ComplexMatrix::identity(5) - q.matrix());
  CHECK(frobenius_norm(matched_projection(q_comp).matrix() -
                       (ComplexMatrix::identity(5) - m_q)) <= 1e-8);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "projdist/idempotent.hpp"
#include "projdist/linalg.hpp"

using namespace projdist;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return ComplexMatrix(std::move(m));
}

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("svd singular values") {
  SvdResult id2 = svd(ComplexMatrix::identity(2));
  REQUIRE(id2.singular_values.size() == 2);
  CHECK(id2.singular_values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id2.singular_values[1] == doctest::Approx(1.0).epsilon(1e-12));

  SvdResult q1 = svd(mat2(1, 1, 0, 0));
  CHECK(q1.singular_values[0] == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(q1.singular_values[1] == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  SvdResult zero3 = svd(ComplexMatrix::zero(3, 3));
  for (double s : zero3.singular_values) CHECK(s == 0.0);
}

TEST_CASE("svd reconstructs the input") {
  ComplexMatrix m = random_gaussian(5, 3, 1.0, 11);
  SvdResult dec = svd(m);
  Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(5, 3);
  for (std::size_t i = 0; i < dec.singular_values.size(); ++i) {
    sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = dec.singular_values[i];
  }
  CHECK((dec.u.eigen() * sigma * dec.v.eigen().adjoint() - m.eigen()).norm() < 1e-12);
}

TEST_CASE("pinv basics") {
  ComplexMatrix id3 = ComplexMatrix::identity(3);
  CHECK(frobenius_norm(pinv(id3) - id3) < 1e-12);

  // [[1,1],[0,0]]^+ = (1/2) [[1,0],[1,0]], checkable through the four
  // Penrose identities as well.
  ComplexMatrix q = mat2(1, 1, 0, 0);
  ComplexMatrix qp = pinv(q);
  CHECK(std::abs(qp(0, 0) - Complex(0.5)) < 1e-12);
  CHECK(std::abs(qp(0, 1)) < 1e-12);
  CHECK(std::abs(qp(1, 0) - Complex(0.5)) < 1e-12);
  CHECK(std::abs(qp(1, 1)) < 1e-12);
  CHECK(frobenius_norm(q * qp * q - q) < 1e-12);
  CHECK(frobenius_norm(qp * q * qp - qp) < 1e-12);
  CHECK(frobenius_norm((q * qp) - (q * qp).adjoint()) < 1e-12);
  CHECK(frobenius_norm((qp * q) - (qp * q).adjoint()) < 1e-12);

  ComplexMatrix zp = pinv(ComplexMatrix::zero(2, 3));
  CHECK(zp.rows() == 3);
  CHECK(zp.cols() == 2);
  CHECK(frobenius_norm(zp) == 0.0);
}

TEST_CASE("pinv of pinv returns the original") {
  ComplexMatrix m = random_gaussian(4, 4, 1.0, 5);
  CHECK(frobenius_norm(pinv(pinv(m)) - m) < 1e-8 * (1.0 + frobenius_norm(m)));
}

TEST_CASE("sqrtm_psd on diagonal and identity input") {
  Eigen::MatrixXcd d(2, 2);
  d << 4.0, 0.0, 0.0, 9.0;
  ComplexMatrix root = sqrtm_psd(ComplexMatrix(std::move(d)));
  CHECK(std::abs(root(0, 0) - Complex(2.0)) < 1e-12);
  CHECK(std::abs(root(1, 1) - Complex(3.0)) < 1e-12);
  CHECK(std::abs(root(0, 1)) < 1e-12);

  ComplexMatrix gram = sqrtm_psd(mat2(2, 0, 0, 0));  // |Q_a^*| for a = 1
  CHECK(std::abs(gram(0, 0) - Complex(kSqrt2)) < 1e-12);
  CHECK(std::abs(gram(1, 1)) < 1e-12);

  CHECK(frobenius_norm(sqrtm_psd(ComplexMatrix::identity(4)) - ComplexMatrix::identity(4)) <
        1e-12);
}

TEST_CASE("sqrtm_psd rejects bad input") {
  CHECK_THROWS_AS((void)sqrtm_psd(mat2(1, 1, 0, 1)), ValidationError);
  CHECK_THROWS_AS((void)sqrtm_psd(mat2(-1, 0, 0, 1)), ValidationError);
}

TEST_CASE("abs_conjugate") {
  Eigen::MatrixXcd half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  ComplexMatrix p(std::move(half));
  CHECK(frobenius_norm(abs_conjugate(p) - p) < 1e-12);

  ComplexMatrix aq = abs_conjugate(mat2(1, 1, 0, 0));
  CHECK(std::abs(aq(0, 0) - Complex(kSqrt2)) < 1e-12);
  CHECK(std::abs(aq(1, 1)) < 1e-12);

  CHECK(frobenius_norm(abs_conjugate(ComplexMatrix::zero(3, 3))) == 0.0);
}

TEST_CASE("norms and trace") {
  CHECK(frobenius_norm(ComplexMatrix::identity(3)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(spectral_norm(mat2(1, 1, 0, 0)) == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(trace(mat2(1, 2.5, 0, 0)) == Complex(1.0));
  CHECK_THROWS_AS((void)trace(ComplexMatrix::zero(2, 3)), ValidationError);
}

TEST_CASE("norm ordering on random matrices") {
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix m = random_gaussian(2 + k % 5, 2 + (k + 3) % 5, 1.0, 100 + k);
    const double fro = frobenius_norm(m);
    const double spectral = spectral_norm(m);
    const double root_rank = std::sqrt(static_cast<double>(numerical_rank(m)));
    CHECK(spectral <= fro * (1.0 + 1e-9));
    CHECK(fro <= root_rank * spectral * (1.0 + 1e-9));
  }
}

TEST_CASE("hermitian_eigen and functional calculus") {
  Eigen::MatrixXcd d(2, 2);
  d << 2.0, 0.0, 0.0, 1.0;
  ComplexMatrix h(std::move(d));
  HermitianEigen dec = hermitian_eigen(h);
  REQUIRE(dec.values.size() == 2);
  CHECK(dec.values[0] == doctest::Approx(1.0));  // ascending
  CHECK(dec.values[1] == doctest::Approx(2.0));

  ComplexMatrix squared = hermitian_apply(h, [](double x) { return x * x; });
  CHECK(std::abs(squared(0, 0) - Complex(4.0)) < 1e-12);
  CHECK(std::abs(squared(1, 1) - Complex(1.0)) < 1e-12);
}

TEST_CASE("sqrtm_psd squares back to the input") {
  for (int k = 0; k < 10; ++k) {
    ComplexMatrix g = random_gaussian(1 + k % 8, 1 + k % 8, 1.0, 200 + k);
    ComplexMatrix h(Eigen::MatrixXcd(g.eigen() * g.eigen().adjoint()));
    ComplexMatrix root = sqrtm_psd(h);
    CHECK(frobenius_norm(root * root - h) < 1e-9 * (1.0 + frobenius_norm(h)));
  }
}

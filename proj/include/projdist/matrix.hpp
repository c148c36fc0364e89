#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace projdist {

using Complex = std::complex<double>;

// Input fails a structural contract: bad shape, non-finite entries,
// a violated precondition, or a residual above its validation tolerance.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine could not deliver its result to tolerance
// (decomposition failure, non-converged bisection, inconsistent output).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested value lies outside the attainable interval.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense complex matrix, the carrier type for everything in this library.
// Thin value wrapper over an Eigen matrix; construction rejects NaN/Inf.
// Zero-sized shapes are allowed (empty blocks occur in rank-0/full-rank
// decompositions).
class ComplexMatrix {
 public:
  ComplexMatrix() : m_(0, 0) {}
  ComplexMatrix(Eigen::Index rows, Eigen::Index cols);  // zero-filled
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix identity(Eigen::Index n);
  static ComplexMatrix zero(Eigen::Index rows, Eigen::Index cols);

  [[nodiscard]] Eigen::Index rows() const { return m_.rows(); }
  [[nodiscard]] Eigen::Index cols() const { return m_.cols(); }
  [[nodiscard]] bool is_square() const { return m_.rows() == m_.cols(); }

  Complex& operator()(Eigen::Index i, Eigen::Index j) { return m_(i, j); }
  const Complex& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  [[nodiscard]] const Eigen::MatrixXcd& eigen() const { return m_; }
  Eigen::MatrixXcd& eigen() { return m_; }

  [[nodiscard]] ComplexMatrix adjoint() const;

 private:
  Eigen::MatrixXcd m_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, Complex s);
ComplexMatrix operator*(const ComplexMatrix& a, double s);

}  // namespace projdist

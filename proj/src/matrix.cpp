#include "projdist/matrix.hpp"

#include <string>
#include <utility>

namespace projdist {

namespace {

void require_finite(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) {
    throw ValidationError("matrix construction: non-finite entry in " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          " matrix");
  }
}

std::string shape_of(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::Index rows, Eigen::Index cols)
    : m_(Eigen::MatrixXcd::Zero(rows, cols)) {
  if (rows < 0 || cols < 0) throw ValidationError("matrix construction: negative dimension");
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) { require_finite(m_); }

ComplexMatrix ComplexMatrix::identity(Eigen::Index n) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(n, n));
}

ComplexMatrix ComplexMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(m_.adjoint()); }

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix addition: shape mismatch " + shape_of(a) + " vs " + shape_of(b));
  }
  return ComplexMatrix(a.eigen() + b.eigen());
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix subtraction: shape mismatch " + shape_of(a) + " vs " +
                          shape_of(b));
  }
  return ComplexMatrix(a.eigen() - b.eigen());
}

ComplexMatrix operator-(const ComplexMatrix& a) { return ComplexMatrix(-a.eigen()); }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError("matrix product: inner dimension mismatch " + shape_of(a) + " * " +
                          shape_of(b));
  }
  return ComplexMatrix(a.eigen() * b.eigen());
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(s * a.eigen()); }
ComplexMatrix operator*(double s, const ComplexMatrix& a) { return ComplexMatrix(s * a.eigen()); }
ComplexMatrix operator*(const ComplexMatrix& a, Complex s) { return s * a; }
ComplexMatrix operator*(const ComplexMatrix& a, double s) { return s * a; }

}  // namespace projdist

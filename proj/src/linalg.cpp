#include "projdist/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace projdist {

namespace {

std::string shape_of(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Jacobi is the accurate choice at small sizes; divide-and-conquer takes over
// for the larger family matrices (up to ~200x200).
constexpr Eigen::Index kJacobiLimit = 32;

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::MatrixXcd u, v;
  Eigen::VectorXd sigma;
  if (std::min(rows, cols) <= kJacobiLimit) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(m.eigen(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success) {
      throw NumericError("svd: decomposition failed for " + shape_of(m) + " matrix");
    }
    u = dec.matrixU();
    v = dec.matrixV();
    sigma = dec.singularValues();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> dec(m.eigen(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success) {
      throw NumericError("svd: decomposition failed for " + shape_of(m) + " matrix");
    }
    u = dec.matrixU();
    v = dec.matrixV();
    sigma = dec.singularValues();
  }
  SvdResult out{ComplexMatrix(std::move(u)), std::vector<double>(sigma.data(), sigma.data() + sigma.size()),
                ComplexMatrix(std::move(v))};
  return out;
}

double rank_cutoff(const ComplexMatrix& m, double sigma_max) {
  const double dim = static_cast<double>(std::max(m.rows(), m.cols()));
  return dim * std::numeric_limits<double>::epsilon() * sigma_max;
}

ComplexMatrix pinv(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return ComplexMatrix(m.cols(), m.rows());
  SvdResult dec = svd(m);
  const double sigma_max = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
  return pinv(m, rank_cutoff(m, sigma_max));
}

ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol) {
  if (rank_tol < 0) throw ValidationError("pinv: negative rank tolerance");
  if (m.rows() == 0 || m.cols() == 0) return ComplexMatrix(m.cols(), m.rows());
  SvdResult dec = svd(m);
  const Eigen::Index k = static_cast<Eigen::Index>(dec.singular_values.size());
  Eigen::VectorXcd inv_sigma = Eigen::VectorXcd::Zero(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double s = dec.singular_values[static_cast<std::size_t>(i)];
    if (s > rank_tol) inv_sigma(i) = Complex(1.0 / s, 0.0);
  }
  // m = U S V^*  =>  m^+ = V S^+ U^*
  Eigen::MatrixXcd out = dec.v.eigen().leftCols(k) * inv_sigma.asDiagonal() *
                         dec.u.eigen().leftCols(k).adjoint();
  return ComplexMatrix(std::move(out));
}

int numerical_rank(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  SvdResult dec = svd(m);
  const double sigma_max = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
  const double cutoff = rank_cutoff(m, sigma_max);
  int r = 0;
  for (double s : dec.singular_values) {
    if (s > cutoff) ++r;
  }
  return r;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  if (!h.is_square()) throw ValidationError("hermitian_eigen: non-square input " + shape_of(h));
  if (h.rows() == 0) return HermitianEigen{ComplexMatrix(0, 0), {}};
  Eigen::MatrixXcd sym = 0.5 * (h.eigen() + h.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_eigen: eigensolver failed for " + shape_of(h) + " matrix");
  }
  const Eigen::VectorXd& vals = solver.eigenvalues();
  return HermitianEigen{ComplexMatrix(solver.eigenvectors()),
                        std::vector<double>(vals.data(), vals.data() + vals.size())};
}

ComplexMatrix hermitian_apply(const ComplexMatrix& h, const std::function<double(double)>& f) {
  HermitianEigen dec = hermitian_eigen(h);
  const Eigen::Index n = h.rows();
  Eigen::VectorXd mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) mapped(i) = f(dec.values[static_cast<std::size_t>(i)]);
  Eigen::MatrixXcd out =
      dec.vectors.eigen() * mapped.asDiagonal() * dec.vectors.eigen().adjoint();
  return ComplexMatrix(std::move(out));
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& h) {
  if (!h.is_square()) throw ValidationError("sqrtm_psd: non-square input " + shape_of(h));
  const double scale = 1.0 + frobenius_norm(h);
  const double herm_residual = frobenius_norm(ComplexMatrix(h.eigen() - h.eigen().adjoint()));
  if (herm_residual > 1e-10 * scale) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "sqrtm_psd: input not Hermitian, residual %.6g", herm_residual);
    throw ValidationError(buf);
  }
  const double floor = -1e-10 * scale;
  HermitianEigen dec = hermitian_eigen(h);
  for (double lambda : dec.values) {
    if (lambda < floor) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "sqrtm_psd: eigenvalue %.6g below PSD floor %.6g", lambda,
                    floor);
      throw ValidationError(buf);
    }
  }
  const Eigen::Index n = h.rows();
  // Eigenvalue dust on either side of 0 clips to 0 before the root. The root
  // map amplifies noise near 0 without bound (eps-sized dust would become
  // sqrt(eps)-sized output, large enough to defeat downstream rank cutoffs),
  // so anything within eigensolver resolution of 0 is treated as 0.
  const double lambda_max = dec.values.empty() ? 0.0 : std::abs(dec.values.back());
  const double dust = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * lambda_max;
  Eigen::VectorXd roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = dec.values[static_cast<std::size_t>(i)];
    roots(i) = lambda > dust ? std::sqrt(lambda) : 0.0;
  }
  Eigen::MatrixXcd out = dec.vectors.eigen() * roots.asDiagonal() * dec.vectors.eigen().adjoint();
  out = 0.5 * (out + out.adjoint().eval());
  return ComplexMatrix(std::move(out));
}

ComplexMatrix abs_conjugate(const ComplexMatrix& q) {
  if (!q.is_square()) throw ValidationError("abs_conjugate: non-square input " + shape_of(q));
  return sqrtm_psd(ComplexMatrix(q.eigen() * q.eigen().adjoint()));
}

double frobenius_norm(const ComplexMatrix& m) { return m.eigen().norm(); }

double spectral_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  SvdResult dec = svd(m);
  return dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
}

Complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw ValidationError("trace: non-square input " + shape_of(m));
  return m.eigen().trace();
}

}  // namespace projdist

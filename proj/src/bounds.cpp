#include "projdist/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "projdist/linalg.hpp"
#include "projdist/matched.hpp"

namespace projdist {

namespace {

std::string format_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

void require_covering(const Projection& p, const Idempotent& q, const char* who) {
  const double residual =
      frobenius_norm(ComplexMatrix(p.matrix().eigen() * q.matrix().eigen() - q.matrix().eigen()));
  if (residual > 1e-8 * (1.0 + frobenius_norm(q.matrix()))) {
    throw ValidationError(std::string(who) + ": PQ = Q violated, residual " +
                          format_value(residual));
  }
}

}  // namespace

double lambda_bound(const Projection& p, const Idempotent& q) {
  require_covering(p, q, "lambda_bound");
  if (p.rank() < q.rank()) {
    throw NumericError("lambda_bound: rank(P) = " + std::to_string(p.rank()) +
                       " below rank(Q) = " + std::to_string(q.rank()) +
                       " despite PQ = Q");
  }
  const double md = matched_distance(q);
  return std::sqrt(md * md + static_cast<double>(p.rank() - q.rank()));
}

BoundReport check_bounds(const Projection& p, const Idempotent& q) {
  const double lambda = lambda_bound(p, q);
  const double distance = (p.matrix().eigen() - q.matrix().eigen()).norm();
  const double upper = std::sqrt(2.0) * lambda;

  ComplexMatrix q_pinv = pinv(q.matrix());
  const double pinv_distance = (p.matrix().eigen() - q_pinv.eigen()).norm();
  ComplexMatrix commutator(Eigen::MatrixXcd(q_pinv.eigen() * q.matrix().eigen() -
                                            q.matrix().eigen() * q_pinv.eigen()));
  const double comm_norm = spectral_norm(commutator);
  const double pinv_coefficient = std::sqrt(1.0 + comm_norm * comm_norm);

  BoundReport report;
  report.distance = distance;
  report.lambda_pq = lambda;
  report.lower_ok = distance >= lambda - 1e-9;
  report.upper_ok = distance <= upper + 1e-9;
  report.pinv_distance = pinv_distance;
  report.pinv_coefficient = pinv_coefficient;
  report.pinv_ok = pinv_distance <= std::sqrt(2.0) * pinv_coefficient * lambda + 1e-9;
  report.lower_tight = std::abs(distance - lambda) <= 1e-7;
  report.upper_tight = std::abs(distance - upper) <= 1e-7;
  return report;
}

BilateralResult bilateral_check(const Idempotent& q) {
  Projection p_range = range_projection(q);
  const double lambda1 = (p_range.matrix().eigen() - q.matrix().eigen()).norm();
  if (lambda1 <= 1e-10 * (1.0 + frobenius_norm(q.matrix()))) {
    return BilateralResult{true, 0.0, 0.0};
  }
  const double ratio = matched_distance(q) / lambda1;
  const double residual = std::max(std::sqrt(2.0) / 2.0 - ratio, ratio - 1.0);
  return BilateralResult{false, ratio, residual};
}

DrazinResult drazin(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw ValidationError("drazin: non-square input " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()));
  }
  const Eigen::Index n = a.rows();
  const double norm_a = frobenius_norm(a);

  // Index search: ranks of successive powers, starting at A^0 = I. The index
  // of an n x n matrix never exceeds n. Capacity covers A^{2k+1} up front so
  // references returned by power() stay valid across calls.
  std::vector<Eigen::MatrixXcd> powers;
  powers.reserve(static_cast<std::size_t>(2 * n + 4));
  powers.push_back(Eigen::MatrixXcd::Identity(n, n));
  auto power = [&](int j) -> const Eigen::MatrixXcd& {
    while (static_cast<int>(powers.size()) <= j) {
      powers.push_back(powers.back() * a.eigen());
      if (powers.back().norm() > 1e12) {
        throw NumericError("drazin: ‖A^" + std::to_string(powers.size() - 1) +
                           "‖_F overflows 1e12; rescale the input");
      }
    }
    return powers[static_cast<std::size_t>(j)];
  };

  int k = -1;
  for (int j = 0; j <= static_cast<int>(n); ++j) {
    if (numerical_rank(ComplexMatrix(power(j))) == numerical_rank(ComplexMatrix(power(j + 1)))) {
      k = j;
      break;
    }
  }
  if (k < 0) {
    throw NumericError("drazin: no index found up to j = n; rank sequence never stabilized");
  }

  ComplexMatrix middle = pinv(ComplexMatrix(power(2 * k + 1)));
  Eigen::MatrixXcd a_d = power(k) * middle.eigen() * power(k);

  const double scale = 1e-8 * (1.0 + std::pow(norm_a, static_cast<double>(k + 1)));
  const double commute = (a.eigen() * a_d - a_d * a.eigen()).norm();
  const double inner = (a_d * a.eigen() * a_d - a_d).norm();
  const double core = (power(k + 1) * a_d - power(k)).norm();
  if (commute > scale || inner > scale || core > scale) {
    throw NumericError("drazin: identity residuals AA^d-A^dA = " + format_value(commute) +
                       ", A^dAA^d-A^d = " + format_value(inner) +
                       ", A^{k+1}A^d-A^k = " + format_value(core) + " exceed " +
                       format_value(scale));
  }

  Projection aa_dag = validate_projection(column_space_projection(a));
  Idempotent aa_d = validate_idempotent(ComplexMatrix(Eigen::MatrixXcd(a.eigen() * a_d)));
  if (aa_d.rank() != numerical_rank(ComplexMatrix(power(k)))) {
    throw NumericError("drazin: rank(AA^d) = " + std::to_string(aa_d.rank()) +
                       " differs from rank(A^k)");
  }
  return DrazinResult{k, ComplexMatrix(std::move(a_d)), std::move(aa_dag), std::move(aa_d)};
}

BoundReport drazin_corollaries(const ComplexMatrix& a) {
  DrazinResult d = drazin(a);
  return check_bounds(d.aa_dag, d.aa_d);
}

Idempotent q_family(double a) {
  if (!(a > 0.0)) {
    throw ValidationError("q_family: parameter a must be positive, got " + format_value(a));
  }
  Eigen::MatrixXcd q(2, 2);
  q << 1.0, a, 0.0, 0.0;
  return validate_idempotent(ComplexMatrix(std::move(q)));
}

DrazinFamily drazin_family(int n, double a) {
  if (n < 1) throw ValidationError("drazin_family: n must be ≥ 1");
  if (!(a > 0.0)) {
    throw ValidationError("drazin_family: parameter a must be positive, got " + format_value(a));
  }
  const Eigen::Index half = 2 * n;
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(half, half);
  j(0, 1) = 1.0;

  Eigen::MatrixXcd am = Eigen::MatrixXcd::Zero(2 * half, 2 * half);
  am.topLeftCorner(half, half) = Eigen::MatrixXcd::Identity(half, half);
  am.topRightCorner(half, half) = a * Eigen::MatrixXcd::Identity(half, half);
  am.bottomRightCorner(half, half) = j;

  Eigen::MatrixXcd qm = Eigen::MatrixXcd::Zero(2 * half, 2 * half);
  qm.topLeftCorner(half, half) = Eigen::MatrixXcd::Identity(half, half);
  qm.topRightCorner(half, half) = a * (Eigen::MatrixXcd::Identity(half, half) + j);

  const double square_residual = (am * am - qm).norm();
  if (square_residual > 1e-12) {
    throw NumericError("drazin_family: A² - Q residual " + format_value(square_residual));
  }
  Idempotent q = validate_idempotent(ComplexMatrix(Eigen::MatrixXcd(qm)));

  // The nonzero spectrum of QQ* is pinned by the closed form: the pair
  // ((2+3a²) ± sqrt5·a²)/2 plus 1+a² with multiplicity 2n-2.
  HermitianEigen eig = hermitian_eigen(ComplexMatrix(Eigen::MatrixXcd(qm * qm.adjoint())));
  std::vector<double> expected;
  expected.push_back((2.0 + 3.0 * a * a + std::sqrt(5.0) * a * a) / 2.0);
  for (int i = 0; i < 2 * n - 2; ++i) expected.push_back(1.0 + a * a);
  expected.push_back((2.0 + 3.0 * a * a - std::sqrt(5.0) * a * a) / 2.0);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double got = eig.values[eig.values.size() - 1 - i];  // ascending storage
    if (std::abs(got - expected[i]) > 1e-9) {
      throw NumericError("drazin_family: eigenvalue " + format_value(got) +
                         " deviates from closed form " + format_value(expected[i]));
    }
  }
  return DrazinFamily{ComplexMatrix(std::move(am)), std::move(q)};
}

std::vector<ScanEntry> sqrt2_optimality_scan(const std::vector<int>& n_values,
                                             const std::vector<double>& a_values) {
  std::vector<ScanEntry> out;
  out.reserve(n_values.size() * a_values.size());
  for (int n : n_values) {
    for (double a : a_values) {
      DrazinFamily fam = drazin_family(n, a);
      const double a2 = a * a;
      const double l1 = (2.0 + 3.0 * a2 + std::sqrt(5.0) * a2) / 2.0;
      const double l2 = (2.0 + 3.0 * a2 - std::sqrt(5.0) * a2) / 2.0;
      const double b = l1 - std::sqrt(l1) + l2 - std::sqrt(l2);
      const double closed_min_sq =
          b + (2.0 * n - 2.0) * ((1.0 + a2) - std::sqrt(1.0 + a2));
      const double generic_min = matched_distance(fam.q);
      const double generic_min_sq = generic_min * generic_min;
      if (std::abs(closed_min_sq - generic_min_sq) > 1e-7) {
        throw NumericError("sqrt2_optimality_scan: closed-form min² " +
                           format_value(closed_min_sq) + " disagrees with SVD route " +
                           format_value(generic_min_sq));
      }
      ComplexMatrix aa_dag = column_space_projection(fam.a);
      const double num = (aa_dag.eigen() - fam.q.matrix().eigen()).squaredNorm();
      out.push_back(ScanEntry{n, a, num / (closed_min_sq + 1.0), closed_min_sq, generic_min_sq});
    }
  }
  return out;
}

}  // namespace projdist
